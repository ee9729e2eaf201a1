#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace decosim {

// Sampled time series with named value columns and optional standard-error
// columns, serialized to CSV with a fixed, diff-stable format: one header
// row, 17 significant digits, LF line endings.
class CurveTable {
public:
    explicit CurveTable(std::vector<double> time);

    void add_column(std::string name, std::vector<double> values);

    std::size_t rows() const { return time_.size(); }
    const std::vector<double>& time() const { return time_; }
    const std::vector<double>& column(const std::string& name) const;

    std::string to_csv() const;

private:
    std::vector<double> time_;
    std::vector<std::pair<std::string, std::vector<double>>> columns_;
};

// Deterministic text form of a double: shortest 17-significant-digit decimal.
std::string format_double(double value);

// FNV-1a 64-bit checksum, hex-encoded; used to stamp output files into run
// manifests.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace decosim
