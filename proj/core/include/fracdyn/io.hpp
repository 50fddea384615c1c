#ifndef FRACDYN_IO_HPP
#define FRACDYN_IO_HPP

#include <fracdyn/fdesolve.hpp>
#include <fracdyn/gridops.hpp>

#include <map>
#include <string>

namespace fracdyn {

/// Formats with 17 significant digits so that repeated runs diff byte-exactly.
std::string format_g17(double v);

/// Two-column CSV "t,x" with a one-line header; the grid must be uniform.
/// Parse failures carry 1-based line numbers.
SampledFunction read_sampled_csv(const std::string& path);
void write_sampled_csv(const SampledFunction& f, const std::string& path,
                       const std::string& value_name = "x");

/// Trajectory CSV: header "t,<channels...>" in stored channel order
/// (x_1..x_n, v_1..v_n, then p_..., lambda when present), one row per node.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);
Trajectory read_trajectory_csv(const std::string& path, double alpha);

/// Flat key = value configuration, '#' comments, whitespace-insensitive.
class KeyValueConfig {
  public:
    static KeyValueConfig from_file(const std::string& path);
    static KeyValueConfig from_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

  private:
    std::map<std::string, std::string> entries_;
};

} // namespace fracdyn

#endif
