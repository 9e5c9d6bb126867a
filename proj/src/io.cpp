#include "ccnet/io.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "ccnet/types.hpp"

namespace ccnet {

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw ValidationError("format: expected csv or json, got " + std::string(name));
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ValidationError("csv: bad number '" + s + "'");
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

void write_row_prefix(std::ostream& out, const ResultRecord& r) {
    out << r.command << ',' << format_double(r.r) << ',' << format_double(r.t) << ',' << r.M << ',' << r.L << ','
        << format_double(r.z_mod) << ',' << format_double(r.z_arg_over_pi) << ',' << r.seed << ',' << r.n_steps << ',';
}

void write_row_suffix(std::ostream& out, const ResultRecord& r) {
    out << ',' << (r.xi_M ? format_double(*r.xi_M) : "") << ',' << r.status << '\n';
}

void require_plain(const std::string& field, const char* what) {
    if (field.find_first_of(",\n\r") != std::string::npos)
        throw ValidationError(std::string("csv: ") + what + " must not contain commas or newlines");
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ResultRecord>& records) {
    out << kCsvHeader << '\n';
    for (const ResultRecord& r : records) {
        require_plain(r.command, "command");
        require_plain(r.status, "status");
        if (r.rows.empty()) {
            write_row_prefix(out, r);
            out << ",,";
            write_row_suffix(out, r);
        }
        for (const RecordRow& row : r.rows) {
            write_row_prefix(out, r);
            out << row.k << ',' << format_double(row.value) << ','
                << (row.stderr_value ? format_double(*row.stderr_value) : "");
            write_row_suffix(out, r);
        }
    }
}

std::vector<ResultRecord> read_csv(std::istream& in) {
    std::vector<ResultRecord> records;
    std::string line;
    if (!std::getline(in, line)) return records;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw ValidationError("csv: unexpected header: " + line);
    std::vector<std::string> previous_key;
    int previous_k = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 14) throw ValidationError("csv: expected 14 fields in line: " + line);
        std::vector<std::string> key(f.begin(), f.begin() + 9);
        key.push_back(f[12]);
        key.push_back(f[13]);
        const bool has_row = !f[9].empty();
        const int k = has_row ? std::stoi(f[9]) : 0;
        const bool continues = !records.empty() && has_row && key == previous_key && !records.back().rows.empty() &&
                               k > previous_k;
        if (!continues) {
            ResultRecord r;
            r.command = f[0];
            r.r = parse_double(f[1]);
            r.t = parse_double(f[2]);
            r.M = std::stoi(f[3]);
            r.L = std::stoi(f[4]);
            r.z_mod = parse_double(f[5]);
            r.z_arg_over_pi = parse_double(f[6]);
            r.seed = std::stoull(f[7]);
            r.n_steps = std::stol(f[8]);
            if (!f[12].empty()) r.xi_M = parse_double(f[12]);
            r.status = f[13];
            records.push_back(std::move(r));
        }
        if (has_row) {
            RecordRow row;
            row.k = k;
            row.value = parse_double(f[10]);
            if (!f[11].empty()) row.stderr_value = parse_double(f[11]);
            records.back().rows.push_back(row);
        }
        previous_key = std::move(key);
        previous_k = k;
    }
    return records;
}

nlohmann::json to_json(const ResultRecord& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const RecordRow& row : r.rows) {
        nlohmann::json jr = {{"k", row.k}, {"value", row.value}};
        jr["stderr"] = row.stderr_value ? nlohmann::json(*row.stderr_value) : nlohmann::json(nullptr);
        rows.push_back(jr);
    }
    nlohmann::json j;
    j["command"] = r.command;
    j["config"] = {{"r", r.r},         {"t", r.t},
                   {"M", r.M},         {"L", r.L},
                   {"z_mod", r.z_mod}, {"z_arg_over_pi", r.z_arg_over_pi},
                   {"seed", r.seed},   {"n_steps", r.n_steps}};
    j["rows"] = rows;
    j["xi_M"] = r.xi_M ? nlohmann::json(*r.xi_M) : nlohmann::json(nullptr);
    j["status"] = r.status;
    j["extras"] = r.extras;
    j["meta"] = {{"wall_clock_s", r.wall_clock_s}, {"version", r.version}};
    return j;
}

ResultRecord from_json(const nlohmann::json& j) {
    ResultRecord r;
    r.command = j.at("command").get<std::string>();
    const auto& c = j.at("config");
    r.r = c.at("r").get<double>();
    r.t = c.at("t").get<double>();
    r.M = c.at("M").get<int>();
    r.L = c.at("L").get<int>();
    r.z_mod = c.at("z_mod").get<double>();
    r.z_arg_over_pi = c.at("z_arg_over_pi").get<double>();
    r.seed = c.at("seed").get<std::uint64_t>();
    r.n_steps = c.at("n_steps").get<long>();
    for (const auto& jr : j.at("rows")) {
        RecordRow row;
        row.k = jr.at("k").get<int>();
        row.value = jr.at("value").get<double>();
        if (!jr.at("stderr").is_null()) row.stderr_value = jr.at("stderr").get<double>();
        r.rows.push_back(row);
    }
    if (!j.at("xi_M").is_null()) r.xi_M = j.at("xi_M").get<double>();
    r.status = j.at("status").get<std::string>();
    r.extras = j.value("extras", nlohmann::json::object());
    if (j.contains("meta")) {
        r.wall_clock_s = j["meta"].value("wall_clock_s", 0.0);
        r.version = j["meta"].value("version", std::string(kArtifactVersion));
    }
    return r;
}

void write_json_lines(std::ostream& out, const std::vector<ResultRecord>& records) {
    for (const ResultRecord& r : records) out << to_json(r).dump() << '\n';
}

std::vector<ResultRecord> read_json_lines(std::istream& in) {
    std::vector<ResultRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(from_json(nlohmann::json::parse(line)));
    }
    return records;
}

void emit(const std::vector<ResultRecord>& records, Format format, const std::string& path) {
    auto write = [&](std::ostream& out) {
        if (format == Format::Csv)
            write_csv(out, records);
        else
            write_json_lines(out, records);
    };
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error(path + ": " + std::strerror(errno));
    write(file);
    file.flush();
    if (!file) throw std::runtime_error(path + ": " + std::strerror(errno));
}

void sort_records(std::vector<ResultRecord>& records) {
    auto key = [](const ResultRecord& r) {
        return std::tie(r.command, r.r, r.M, r.L, r.z_mod, r.z_arg_over_pi, r.seed);
    };
    std::stable_sort(records.begin(), records.end(),
                     [&](const ResultRecord& a, const ResultRecord& b) { return key(a) < key(b); });
}

}  // namespace ccnet
