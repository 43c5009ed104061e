#include "csvio.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "constants.hpp"

namespace gpb {

std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string response_csv(const FrequencyResponse& response) {
    std::ostringstream os;
    os << kResponseCsvHeader << "\n";
    for (const ResponseSample& s : response.samples)
        os << format_g9(s.frequency_hz) << "," << format_g9(s.zin_ohm.real()) << ","
           << format_g9(s.zin_ohm.imag()) << "," << format_g9(s.s11_db) << "\n";
    return os.str();
}

std::string pattern_csv(const FarFieldPattern& p) {
    std::ostringstream os;
    os << kPatternCsvHeader << "\n";
    for (std::size_t it = 0; it < p.theta_rad.size(); ++it)
        for (std::size_t ip = 0; ip < p.phi_rad.size(); ++ip) {
            const std::size_t k = p.idx(it, ip);
            os << format_g9(p.theta_rad[it] * 180.0 / kPi) << ","
               << format_g9(p.phi_rad[ip] * 180.0 / kPi) << "," << format_g9(p.gain_dbi[k]) << ","
               << format_g9(p.co_db[k]) << "," << format_g9(p.cross_db[k]) << "\n";
        }
    return os.str();
}

namespace {

// Quotes a free-text cell when it would otherwise break the column layout.
std::string csv_cell(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << kSweepCsvHeader << "\n";
    for (const SweepRow& r : rows) {
        os << format_g9(r.value) << ",";
        if (r.resonant) {
            os << format_g9(r.zin_ohm.real()) << "," << format_g9(r.zin_ohm.imag()) << ","
               << format_g9(r.resonance_hz / 1e9) << "," << format_g9(r.s11_db) << ","
               << format_g9(r.bandwidth_pct) << (r.bandwidth_truncated ? ">" : "") << ","
               << format_g9(r.gain_dbi) << "," << csv_cell(r.note);
        } else {
            os << "N/A,N/A,N/A,N/A,N/A,N/A,"
               << csv_cell(r.note.empty() ? "not resonant" : r.note);
        }
        os << "\n";
    }
    return os.str();
}

void write_text_file(const std::string& path, const std::string& bytes) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << bytes;
}

}  // namespace gpb
