#include "decosim/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace decosim {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (errno != 0 || end == text.c_str() || *end != '\0') {
        throw std::invalid_argument(key + " must be a number, got '" + text + "'");
    }
    return value;
}

std::int64_t parse_int(const std::string& key, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const long long value = std::strtoll(text.c_str(), &end, 10);
    if (errno != 0 || end == text.c_str() || *end != '\0') {
        throw std::invalid_argument(key + " must be an integer, got '" + text + "'");
    }
    return value;
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
    if (errno != 0 || end == text.c_str() || *end != '\0') {
        throw std::invalid_argument(key + " must be a nonnegative integer, got '" + text + "'");
    }
    return value;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        " is not key=value: '" + line + "'");
        }
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

void apply_config(const std::map<std::string, std::string>& config, RunSettings& settings) {
    for (const auto& [key, value] : config) {
        if (key == "m") {
            settings.params.osc.m = parse_double(key, value);
        } else if (key == "omega0") {
            settings.params.osc.omega0 = parse_double(key, value);
        } else if (key == "gamma") {
            settings.params.bath.gamma = parse_double(key, value);
        } else if (key == "temperature") {
            settings.params.bath.temperature = parse_double(key, value);
        } else if (key == "g") {
            settings.params.drive.g = parse_double(key, value);
        } else if (key == "d") {
            settings.params.cat.d = parse_double(key, value);
        } else if (key == "sigma") {
            settings.params.cat.sigma = parse_double(key, value);
        } else if (key == "t_max") {
            settings.params.grid.t_max = parse_double(key, value);
        } else if (key == "n_steps") {
            settings.params.grid.n_steps = parse_int(key, value);
        } else if (key == "hbar") {
            settings.params.units.hbar = parse_double(key, value);
        } else if (key == "kB") {
            settings.params.units.kB = parse_double(key, value);
        } else if (key == "seed") {
            settings.seed = parse_uint(key, value);
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
}

std::vector<double> parse_scan_list(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (item.empty()) throw std::invalid_argument("empty entry in scan list");
        out.push_back(parse_double("scan entry", item));
    }
    if (out.empty()) throw std::invalid_argument("scan list must be nonempty");
    return out;
}

}  // namespace decosim
