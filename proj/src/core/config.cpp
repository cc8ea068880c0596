#include "config.hpp"

#include <fstream>
#include <sstream>

#include "error.hpp"

namespace th {

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string t = trim(line);
        if (t.empty() || (t.front() == '[' && t.back() == ']')) continue;
        auto eq = t.find('=');
        require(eq != std::string::npos, errc::parse_error, "config: expected key=value: " + t);
        std::string k = trim(t.substr(0, eq)), v = trim(t.substr(eq + 1));
        require(!k.empty(), errc::parse_error, "config: empty key");
        cfg.kv_[k] = v;
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), errc::io_error, "cannot open config: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string Config::str(const std::string& key) const {
    auto it = kv_.find(key);
    require(it != kv_.end(), errc::parse_error, "config: missing key '" + key + "'");
    return it->second;
}

std::string Config::str_or(const std::string& key, const std::string& def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : it->second;
}

double Config::num(const std::string& key) const {
    try {
        size_t pos = 0;
        double v = std::stod(str(key), &pos);
        require(pos == str(key).size(), errc::parse_error, "config: bad number for " + key);
        return v;
    } catch (const error&) {
        throw;
    } catch (...) {
        fail(errc::parse_error, "config: bad number for '" + key + "'");
    }
}

double Config::num_or(const std::string& key, double def) const {
    return has(key) ? num(key) : def;
}

int64_t Config::integer(const std::string& key) const {
    double v = num(key);
    int64_t i = static_cast<int64_t>(v);
    require(static_cast<double>(i) == v, errc::parse_error, "config: expected integer " + key);
    return i;
}

int64_t Config::int_or(const std::string& key, int64_t def) const {
    return has(key) ? integer(key) : def;
}

uint64_t Config::uint_or(const std::string& key, uint64_t def) const {
    if (!has(key)) return def;
    try {
        return std::stoull(str(key));
    } catch (...) {
        fail(errc::parse_error, "config: bad unsigned for '" + key + "'");
    }
}

std::vector<int64_t> Config::int_list(const std::string& key) const {
    std::vector<int64_t> out;
    std::istringstream in(str(key));
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stoll(tok));
        } catch (...) {
            fail(errc::parse_error, "config: bad integer list '" + key + "'");
        }
    }
    require(!out.empty(), errc::parse_error, "config: empty list '" + key + "'");
    return out;
}

std::vector<double> Config::num_list(const std::string& key) const {
    std::vector<double> out;
    std::istringstream in(str(key));
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            fail(errc::parse_error, "config: bad number list '" + key + "'");
        }
    }
    require(!out.empty(), errc::parse_error, "config: empty list '" + key + "'");
    return out;
}

std::string Config::echo() const {
    std::string out;
    for (const auto& [k, v] : kv_) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

} // namespace th
