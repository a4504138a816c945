#include "sbsize/data_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "sbsize/errors.hpp"

namespace sbsize {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s, const std::string& what, long line_no) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw DataError("line " + std::to_string(line_no) + ": bad " + what + " value '" + s + "'");
    }
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return in;
}

}  // namespace

void SiteMeta::validate() const {
    if (site_id.empty()) throw DataError("site_id must not be empty");
    if (latitude_deg < -90.0 || latitude_deg > 90.0)
        throw DataError("latitude out of range [-90, 90]: " + std::to_string(latitude_deg));
    if (longitude_deg < -180.0 || longitude_deg > 180.0)
        throw DataError("longitude out of range [-180, 180]: " + std::to_string(longitude_deg));
    if (utc_offset_h < -14.0 || utc_offset_h > 14.0)
        throw DataError("utc_offset out of range [-14, 14]: " + std::to_string(utc_offset_h));
}

void IrradianceDay::validate() const {
    if (!is_valid_date(date)) throw DataError("invalid irradiance day date");
    if (ghi_wm2.size() != kMinutesPerDay || gap_mask.size() != kMinutesPerDay)
        throw DataError(to_string(date) + ": irradiance day must have exactly 1440 samples");
    for (int i = 0; i < kMinutesPerDay; ++i) {
        const double g = ghi_wm2[i];
        if (!(g >= 0.0) || g > kGhiCeilingWm2)
            throw DataError(to_string(date) + " minute " + std::to_string(i) +
                            ": GHI out of range [0, 1600]: " + std::to_string(g));
    }
}

void TemperatureDay::validate() const {
    if (!is_valid_date(date)) throw DataError("invalid temperature day date");
    if (!(t_max_c >= -60.0 && t_max_c <= 60.0))
        throw DataError(to_string(date) + ": tmax_c out of range [-60, 60]: " + std::to_string(t_max_c));
}

IrradianceLoadResult load_irradiance(const std::string& path, const SiteMeta& site) {
    site.validate();
    std::ifstream in = open_or_throw(path);

    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    ++line_no;
    if (trim(line) != "timestamp,ghi_wm2")
        throw DataError(path + ": bad header '" + trim(line) + "' (expected 'timestamp,ghi_wm2')");

    // (date, minute) -> ghi, kept in file order for monotonicity checks
    struct RawDay {
        std::vector<double> ghi = std::vector<double>(kMinutesPerDay, -1.0);  // -1 = missing
    };
    std::map<Date, RawDay> raw;

    bool have_prev = false;
    Date prev_date{};
    int prev_minute = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = trim(line);
        if (row.empty()) continue;
        const size_t comma = row.find(',');
        if (comma == std::string::npos)
            throw DataError("line " + std::to_string(line_no) + ": malformed row '" + row + "'");
        MinuteStamp ts;
        try {
            ts = parse_minute_stamp(row.substr(0, comma));
        } catch (const DataError& e) {
            throw DataError("line " + std::to_string(line_no) + ": " + e.what());
        }
        const double ghi = parse_double(row.substr(comma + 1), "ghi_wm2", line_no);
        if (!(ghi >= 0.0) || ghi > kGhiCeilingWm2)
            throw DataError("line " + std::to_string(line_no) + ": GHI out of range [0, 1600]: " + row);

        if (have_prev) {
            if (ts.date < prev_date || (ts.date == prev_date && ts.minute_of_day < prev_minute))
                throw DataError("line " + std::to_string(line_no) + ": non-monotonic timestamp");
            if (ts.date == prev_date && ts.minute_of_day == prev_minute)
                throw DataError("line " + std::to_string(line_no) + ": duplicate timestamp");
        }
        have_prev = true;
        prev_date = ts.date;
        prev_minute = ts.minute_of_day;

        raw[ts.date].ghi[ts.minute_of_day] = ghi;
    }

    IrradianceLoadResult out;
    for (auto& [date, rd] : raw) {
        IrradianceDay day;
        day.date = date;
        day.ghi_wm2 = rd.ghi;
        day.gap_mask.assign(kMinutesPerDay, false);

        // Find gap runs; interpolate short ones, drop the day on long ones.
        bool drop = false;
        std::string drop_reason;
        int i = 0;
        while (i < kMinutesPerDay) {
            if (day.ghi_wm2[i] >= 0.0) {
                ++i;
                continue;
            }
            int j = i;
            while (j < kMinutesPerDay && day.ghi_wm2[j] < 0.0) ++j;
            const int gap_len = j - i;
            if (gap_len > kMaxGapMinutes) {
                drop = true;
                drop_reason = "gap of " + std::to_string(gap_len) + " min starting at minute " +
                              std::to_string(i);
                break;
            }
            const bool has_left = i > 0;
            const bool has_right = j < kMinutesPerDay;
            for (int k = i; k < j; ++k) {
                double v;
                if (has_left && has_right) {
                    const double left = day.ghi_wm2[i - 1];
                    const double right = day.ghi_wm2[j];
                    const double frac = static_cast<double>(k - (i - 1)) / static_cast<double>(j - (i - 1));
                    v = left + (right - left) * frac;
                } else if (has_left) {
                    v = day.ghi_wm2[i - 1];  // trailing edge: hold last sample
                } else if (has_right) {
                    v = day.ghi_wm2[j];  // leading edge: hold first sample
                } else {
                    drop = true;
                    drop_reason = "no samples";
                    break;
                }
                day.ghi_wm2[k] = v;
                day.gap_mask[k] = true;
                ++out.imputed_minutes;
            }
            i = j;
        }
        if (drop) {
            out.excluded.push_back({date, drop_reason});
            continue;
        }
        day.validate();
        out.days.push_back(std::move(day));
    }
    return out;
}

TemperatureLoadResult load_temperature(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    ++line_no;
    if (trim(line) != "date,tmax_c")
        throw DataError(path + ": bad header '" + trim(line) + "' (expected 'date,tmax_c')");

    std::map<Date, double> records;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = trim(line);
        if (row.empty()) continue;
        const size_t comma = row.find(',');
        if (comma == std::string::npos)
            throw DataError("line " + std::to_string(line_no) + ": malformed row '" + row + "'");
        Date d;
        try {
            d = parse_date(row.substr(0, comma));
        } catch (const DataError& e) {
            throw DataError("line " + std::to_string(line_no) + ": " + e.what());
        }
        const double t = parse_double(row.substr(comma + 1), "tmax_c", line_no);
        if (!(t >= -60.0 && t <= 60.0))
            throw DataError("line " + std::to_string(line_no) + ": tmax_c out of range [-60, 60]");
        if (records.count(d))
            throw DataError("line " + std::to_string(line_no) + ": duplicate date " + to_string(d));
        records[d] = t;
    }
    if (records.empty()) throw DataError(path + ": no temperature records");

    TemperatureLoadResult out;
    const long long first = to_serial(records.begin()->first);
    const long long last = to_serial(records.rbegin()->first);
    double prev = records.begin()->second;
    for (long long s = first; s <= last; ++s) {
        const Date d = from_serial(s);
        auto it = records.find(d);
        if (it != records.end()) {
            prev = it->second;
        } else {
            out.filled.push_back(d);
        }
        out.days.push_back(TemperatureDay{d, prev});
    }
    return out;
}

SiteMeta load_site(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    SiteMeta site;
    bool got_lat = false, got_lon = false, got_off = false;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = trim(line);
        if (row.empty() || row[0] == '#') continue;
        const size_t eq = row.find('=');
        if (eq == std::string::npos)
            throw DataError(path + " line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(row.substr(0, eq));
        const std::string val = trim(row.substr(eq + 1));
        if (key == "site_id") {
            site.site_id = val;
        } else if (key == "name") {
            site.name = val;
        } else if (key == "latitude") {
            site.latitude_deg = parse_double(val, "latitude", line_no);
            got_lat = true;
        } else if (key == "longitude") {
            site.longitude_deg = parse_double(val, "longitude", line_no);
            got_lon = true;
        } else if (key == "utc_offset") {
            site.utc_offset_h = parse_double(val, "utc_offset", line_no);
            got_off = true;
        } else {
            throw DataError(path + " line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    if (site.site_id.empty() || !got_lat || !got_lon || !got_off)
        throw DataError(path + ": missing required keys (site_id, latitude, longitude, utc_offset)");
    site.validate();
    return site;
}

void write_irradiance_csv(const std::string& path, const std::vector<IrradianceDay>& days) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "timestamp,ghi_wm2\n";
    char buf[48];
    for (const auto& day : days) {
        for (int m = 0; m < kMinutesPerDay; ++m) {
            // four decimals keep the quantization small enough that a clear-sky
            // day still measures SIVI = 1 at reporting precision after a round trip
            std::snprintf(buf, sizeof(buf), "%s,%.4f\n", format_minute_stamp(day.date, m).c_str(),
                          day.ghi_wm2[m]);
            out << buf;
        }
    }
}

void write_temperature_csv(const std::string& path, const std::vector<TemperatureDay>& days) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << "date,tmax_c\n";
    char buf[32];
    for (const auto& day : days) {
        std::snprintf(buf, sizeof(buf), "%s,%.1f\n", to_string(day.date).c_str(), day.t_max_c);
        out << buf;
    }
}

void write_site_file(const std::string& path, const SiteMeta& site) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    char buf[64];
    out << "site_id=" << site.site_id << "\n";
    out << "name=" << site.name << "\n";
    std::snprintf(buf, sizeof(buf), "latitude=%.6f\n", site.latitude_deg);
    out << buf;
    std::snprintf(buf, sizeof(buf), "longitude=%.6f\n", site.longitude_deg);
    out << buf;
    std::snprintf(buf, sizeof(buf), "utc_offset=%.2f\n", site.utc_offset_h);
    out << buf;
}

}  // namespace sbsize
