#include "decosim/curve_table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace decosim {

CurveTable::CurveTable(std::vector<double> time) : time_(std::move(time)) {
    if (time_.empty()) throw std::invalid_argument("time column must be nonempty");
    for (std::size_t i = 1; i < time_.size(); ++i) {
        if (!(time_[i] > time_[i - 1])) {
            throw std::invalid_argument("time column must be strictly increasing");
        }
    }
}

void CurveTable::add_column(std::string name, std::vector<double> values) {
    if (values.size() != time_.size()) {
        throw std::invalid_argument("column " + name + " length does not match the time column");
    }
    columns_.emplace_back(std::move(name), std::move(values));
}

const std::vector<double>& CurveTable::column(const std::string& name) const {
    for (const auto& [n, values] : columns_) {
        if (n == name) return values;
    }
    throw std::invalid_argument("no column named " + name);
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string CurveTable::to_csv() const {
    std::string out = "t";
    for (const auto& [name, values] : columns_) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (std::size_t i = 0; i < time_.size(); ++i) {
        out += format_double(time_[i]);
        for (const auto& [name, values] : columns_) {
            out += ',';
            out += format_double(values[i]);
        }
        out += '\n';
    }
    return out;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace decosim
