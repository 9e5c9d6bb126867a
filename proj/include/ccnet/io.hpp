#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ccnet {

inline constexpr std::string_view kArtifactVersion = "0.1.0";

// One (k, value, stderr) line of a record. The meaning of k and value depends
// on the command (see README); stderr is absent when not applicable.
struct RecordRow {
    int k = 0;
    double value = 0.0;
    std::optional<double> stderr_value;
    friend bool operator==(const RecordRow&, const RecordRow&) = default;
};

struct ResultRecord {
    std::string command;
    double r = 0.0;
    double t = 0.0;
    int M = 0;
    int L = 0;
    double z_mod = 1.0;
    double z_arg_over_pi = 0.0;
    std::uint64_t seed = 0;
    long n_steps = 0;
    std::vector<RecordRow> rows;
    std::optional<double> xi_M;
    std::string status = "ok";
    // JSON-only payload.
    nlohmann::json extras = nlohmann::json::object();
    double wall_clock_s = 0.0;
    std::string version{kArtifactVersion};
};

enum class Format { Csv, Json };
Format parse_format(std::string_view name);

inline constexpr std::string_view kCsvHeader =
    "command,r,t,M,L,z_mod,z_arg_over_pi,seed,n_steps,k,lambda_k,stderr_k,xi_M,status";

void write_csv(std::ostream& out, const std::vector<ResultRecord>& records);
std::vector<ResultRecord> read_csv(std::istream& in);

nlohmann::json to_json(const ResultRecord& record);
ResultRecord from_json(const nlohmann::json& j);
void write_json_lines(std::ostream& out, const std::vector<ResultRecord>& records);
std::vector<ResultRecord> read_json_lines(std::istream& in);

// Writes to `path`, or stdout for "" and "-". Throws std::runtime_error with the
// system message on I/O failure.
void emit(const std::vector<ResultRecord>& records, Format format, const std::string& path);

// Deterministic order: command, r, M, L, z_mod, z_arg_over_pi, then seed.
void sort_records(std::vector<ResultRecord>& records);

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace ccnet
