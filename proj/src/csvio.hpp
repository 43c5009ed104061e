#pragma once

#include <string>
#include <vector>

#include "fom.hpp"

namespace gpb {

// Locked CSV schemas; a schema-drift test pins these headers.
inline constexpr const char* kResponseCsvHeader = "freq_hz,re_zin_ohm,im_zin_ohm,s11_db";
inline constexpr const char* kPatternCsvHeader = "theta_deg,phi_deg,gain_dbi,co_db,cross_db";
inline constexpr const char* kSweepCsvHeader =
    "value_mm,re_zin_ohm,im_zin_ohm,resonance_ghz,s11_db,bandwidth_pct,gain_dbi,note";

/// Deterministic %.9g formatting (no locale, no timestamps).
std::string format_g9(double v);

std::string response_csv(const FrequencyResponse& response);
std::string pattern_csv(const FarFieldPattern& pattern);

struct SweepRow {
    double value = 0.0;
    bool resonant = false;
    std::complex<double> zin_ohm;  // at resonance
    double resonance_hz = 0.0;
    double s11_db = 0.0;
    double bandwidth_pct = 0.0;
    bool bandwidth_truncated = false;
    double gain_dbi = 0.0;
    std::string note;  // error or "N/A" context; empty when resonant
};

std::string sweep_csv(const std::vector<SweepRow>& rows);

void write_text_file(const std::string& path, const std::string& bytes);

}  // namespace gpb
