#include <fracdyn/io.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fracdyn {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_field(const std::string& field, std::size_t line_no, const std::string& path) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &used);
    } catch (const std::exception&) {
        throw input_error(path + ":" + std::to_string(line_no) + ": not a number: '" + field +
                          "'");
    }
    while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) ++used;
    if (used != field.size()) {
        throw input_error(path + ":" + std::to_string(line_no) + ": trailing junk in '" + field +
                          "'");
    }
    return v;
}

} // namespace

SampledFunction read_sampled_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::string line;
    std::size_t line_no = 0;
    std::vector<double> ts, xs;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        if (line_no == 1) continue; // header
        auto fields = split_csv_line(line);
        if (fields.size() != 2) {
            throw input_error(path + ":" + std::to_string(line_no) + ": expected 2 columns, got " +
                              std::to_string(fields.size()));
        }
        ts.push_back(parse_field(fields[0], line_no, path));
        xs.push_back(parse_field(fields[1], line_no, path));
    }
    if (ts.size() < 3) throw input_error(path + ": need at least 3 data rows");

    const double h = ts[1] - ts[0];
    if (!(h > 0.0)) throw input_error(path + ": time column must increase");
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (std::abs(ts[i] - ts[i - 1] - h) > 1.0e-9 * std::max(1.0, std::abs(h))) {
            throw input_error(path + ":" + std::to_string(i + 2) + ": non-uniform grid spacing");
        }
    }
    SampledFunction f{ts[0], h, std::move(xs)};
    f.validate();
    return f;
}

void write_sampled_csv(const SampledFunction& f, const std::string& path,
                       const std::string& value_name) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << "t," << value_name << "\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        out << format_g17(f.t(i)) << "," << format_g17(f.values[i]) << "\n";
    }
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << "t";
    for (const auto& name : traj.names) out << "," << name;
    out << "\n";
    for (std::size_t i = 0; i < traj.points(); ++i) {
        out << format_g17(traj.t(i));
        for (const auto& col : traj.cols) out << "," << format_g17(col[i]);
        out << "\n";
    }
}

Trajectory read_trajectory_csv(const std::string& path, double alpha) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw input_error(path + ": empty file");
    auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "t") {
        throw input_error(path + ": expected a 't,...' header");
    }

    std::vector<std::vector<double>> cols(header.size());
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw input_error(path + ":" + std::to_string(line_no) + ": column count mismatch");
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            cols[c].push_back(parse_field(fields[c], line_no, path));
        }
    }
    if (cols[0].size() < 2) throw input_error(path + ": need at least 2 rows");

    Trajectory traj;
    traj.alpha = alpha;
    traj.step = cols[0][1] - cols[0][0];
    for (std::size_t c = 1; c < header.size(); ++c) {
        traj.add_channel(header[c], std::move(cols[c]));
    }
    return traj;
}

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw input_error("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw input_error("config line " + std::to_string(line_no) + ": empty key");
        }
        cfg.entries_[key] = value;
    }
    return cfg;
}

bool KeyValueConfig::has(const std::string& key) const { return entries_.count(key) != 0; }

std::string KeyValueConfig::get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw input_error("config: missing key '" + key + "'");
    return it->second;
}

std::string KeyValueConfig::get_or(const std::string& key, const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
    const std::string v = get(key);
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw input_error("config: key '" + key + "' is not a number: '" + v + "'");
    }
}

double KeyValueConfig::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

} // namespace fracdyn
