#include "sbsize/synth.hpp"

#include <algorithm>
#include <cmath>

#include "sbsize/errors.hpp"
#include "sbsize/solar.hpp"

namespace sbsize {

namespace {

// splitmix64: tiny, seedable, portable across platforms and stdlibs.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

std::uint64_t mix_seed(std::uint64_t seed, const Date& date) {
    return seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(to_serial(date)) * 0xd1342543de82ef95ULL + 1;
}

// Cloud transients multiplying the clear-sky envelope: a sequence of
// non-overlapping trapezoid dips walked across the daylight hours. The
// activity draw controls the spacing (and so the count) of the dips, which
// spreads the fixture year across the SIVI axis. Plateaus are long enough for
// the usual smoothing windows to settle, so each transient drives a full
// battery swing in both directions.
std::vector<double> mixed_attenuation(Rng& rng) {
    std::vector<double> att(kMinutesPerDay, 1.0);
    const double activity = 0.3 + 0.7 * rng.uniform();
    int t = 5 * 60 + rng.uniform_int(0, 30);
    const int day_end = 19 * 60;
    while (true) {
        const int gap = rng.uniform_int(4, 4 + static_cast<int>(34.0 * (1.0 - activity)));
        const int plateau = rng.uniform_int(10, 18);
        const int ramp = rng.uniform_int(1, 2);
        const double depth = rng.uniform(0.04, 0.10 + 0.35 * activity);
        t += gap;
        const int lo = t;
        const int hi = t + plateau + 2 * ramp;
        if (hi >= day_end) break;
        for (int m = lo; m <= hi; ++m) {
            double f = 0.0;
            if (m < lo + ramp) {
                f = static_cast<double>((lo + ramp) - m) / ramp;  // 1 at edge, 0 at plateau
            } else if (m > hi - ramp) {
                f = static_cast<double>(m - (hi - ramp)) / ramp;
            }
            const double level = depth + (1.0 - depth) * std::clamp(f, 0.0, 1.0);
            att[m] = std::min(att[m], level);
        }
        t = hi;
    }
    return att;
}

}  // namespace

DayProfile parse_profile(const std::string& name) {
    if (name == "clear") return DayProfile::Clear;
    if (name == "mixed") return DayProfile::Mixed;
    if (name == "overcast") return DayProfile::Overcast;
    if (name == "square_wave") return DayProfile::SquareWave;
    throw DataError("unknown profile '" + name + "' (clear|mixed|overcast|square_wave)");
}

std::string profile_name(DayProfile p) {
    switch (p) {
        case DayProfile::Clear: return "clear";
        case DayProfile::Mixed: return "mixed";
        case DayProfile::Overcast: return "overcast";
        case DayProfile::SquareWave: return "square_wave";
    }
    return "?";
}

IrradianceDay synthesize_day(DayProfile profile, std::uint64_t seed, const SiteMeta& site,
                             const Date& date, const SynthOptions& opts) {
    const ClearSkyProfile cs = clear_sky(site, date);
    IrradianceDay day;
    day.date = date;
    day.gap_mask.assign(kMinutesPerDay, false);
    day.ghi_wm2 = cs.ghi_wm2;

    switch (profile) {
        case DayProfile::Clear:
            break;
        case DayProfile::Overcast:
            for (auto& g : day.ghi_wm2) g *= 0.25;
            break;
        case DayProfile::SquareWave: {
            if (opts.square_period_min < 2) throw DataError("square period must be >= 2 minutes");
            const int period = opts.square_period_min;
            const int phase = static_cast<int>(seed % static_cast<std::uint64_t>(period));
            for (int t = 0; t < kMinutesPerDay; ++t) {
                const bool low = ((t + phase) % period) >= period / 2;
                if (low) day.ghi_wm2[t] *= 0.2;
            }
            break;
        }
        case DayProfile::Mixed: {
            Rng rng(mix_seed(seed, date));
            const std::vector<double> att = mixed_attenuation(rng);
            for (int t = 0; t < kMinutesPerDay; ++t) day.ghi_wm2[t] *= att[t];
            break;
        }
    }
    day.validate();
    return day;
}

SynthYear synthesize_year(const SiteMeta& site, int year, std::uint64_t seed) {
    SynthYear out;
    const Date first{year, 1, 1};
    const int n_days = is_leap_year(year) ? 366 : 365;
    for (int i = 0; i < n_days; ++i) {
        const Date date = from_serial(to_serial(first) + i);
        Rng rng(mix_seed(seed ^ 0xa5a5a5a5a5a5a5a5ULL, date));
        const double u = rng.uniform();
        DayProfile profile;
        if (u < 0.10) {
            profile = DayProfile::Clear;
        } else if (u < 0.20) {
            profile = DayProfile::Overcast;
        } else if (u < 0.26) {
            profile = DayProfile::SquareWave;
        } else {
            profile = DayProfile::Mixed;
        }
        out.irradiance.push_back(synthesize_day(profile, seed + i, site, date));

        // Seasonal daytime maximum: warm in the hemisphere's summer.
        const double doy = static_cast<double>(day_of_year(date));
        const double peak_doy = site.latitude_deg < 0.0 ? 15.0 : 196.0;
        const double t_max = 24.0 + 9.0 * std::cos(2.0 * M_PI * (doy - peak_doy) / 365.25) +
                             rng.uniform(-2.0, 2.0);
        out.temperature.push_back(TemperatureDay{date, t_max});
    }
    return out;
}

SiteMeta fixture_site(int index) {
    switch (index) {
        case 0: return SiteMeta{"syn-1", "Synthetic West", -31.95, 115.86, 8.0};
        case 1: return SiteMeta{"syn-2", "Synthetic Centre", -23.70, 133.88, 9.5};
        case 2: return SiteMeta{"syn-3", "Synthetic South", -42.88, 147.33, 10.0};
        default: throw DataError("fixture_site: index must be 0..2");
    }
}

}  // namespace sbsize
