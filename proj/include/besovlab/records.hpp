#pragma once

#include <map>
#include <string>
#include <vector>

#include "besovlab/stable_analysis.hpp"
#include "besovlab/sampler.hpp"

namespace besovlab {

inline constexpr const char* kVersion = "besovlab 0.1.0";

/// Floating-point text form with 17 significant digits (replayable).
std::string format_double(double x);

/// Reproducible run record, one JSON object per line.
struct RunRecord {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::string version = kVersion;
    std::string timestamp;
    std::vector<std::string> outputs;
    std::map<std::string, std::string> verdicts;

    [[nodiscard]] std::string to_json_line() const;
    static RunRecord from_json_line(const std::string& line);
};

void append_record(const std::string& path, const RunRecord& record);
std::vector<RunRecord> read_records(const std::string& path);

/// CSV n,value,lower,upper,mc_stderr for functional curves.
void write_curve_csv(const FunctionalCurve& curve, const std::string& path);

/// CSV n,median,q25,q75,replicas for empirical norm curves.
void write_norm_curve_csv(const NormCurve& curve, const std::string& path);

}  // namespace besovlab
