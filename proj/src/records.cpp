#include "besovlab/records.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace besovlab {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string RunRecord::to_json_line() const {
    nlohmann::json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = seed;
    j["version"] = version;
    j["timestamp"] = timestamp;
    j["outputs"] = outputs;
    j["verdicts"] = verdicts;
    return j.dump();
}

RunRecord RunRecord::from_json_line(const std::string& line) {
    const nlohmann::json j = nlohmann::json::parse(line);
    RunRecord rec;
    rec.command = j.at("command").get<std::string>();
    rec.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.version = j.at("version").get<std::string>();
    rec.timestamp = j.at("timestamp").get<std::string>();
    rec.outputs = j.at("outputs").get<std::vector<std::string>>();
    rec.verdicts = j.at("verdicts").get<std::map<std::string, std::string>>();
    return rec;
}

void append_record(const std::string& path, const RunRecord& record) {
    std::ofstream out(path, std::ios::app);
    require(out.good(), "append_record: cannot open record file");
    out << record.to_json_line() << '\n';
}

std::vector<RunRecord> read_records(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "read_records: cannot open record file");
    std::vector<RunRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) records.push_back(RunRecord::from_json_line(line));
    }
    return records;
}

void write_curve_csv(const FunctionalCurve& curve, const std::string& path) {
    std::ofstream out(path);
    require(out.good(), "write_curve_csv: cannot open output");
    out << "n,value,lower,upper,mc_stderr\n";
    for (std::size_t i = 0; i < curve.n.size(); ++i) {
        out << curve.n[i] << ',' << format_double(curve.value[i]) << ','
            << format_double(curve.lower[i]) << ',' << format_double(curve.upper[i]) << ','
            << format_double(curve.mc_stderr[i]) << '\n';
    }
}

void write_norm_curve_csv(const NormCurve& curve, const std::string& path) {
    std::ofstream out(path);
    require(out.good(), "write_norm_curve_csv: cannot open output");
    out << "n,median,q25,q75,replicas\n";
    for (std::size_t i = 0; i < curve.n.size(); ++i) {
        out << curve.n[i] << ',' << format_double(curve.median[i]) << ','
            << format_double(curve.q25[i]) << ',' << format_double(curve.q75[i]) << ','
            << curve.replicas << '\n';
    }
}

}  // namespace besovlab
