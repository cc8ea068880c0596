#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace th {

// Flat key=value configuration; '#' comments and [section] headers are
// allowed, keys stay flat. CLI flags are merged on top of file values.
class Config {
  public:
    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    std::string str(const std::string& key) const;
    std::string str_or(const std::string& key, const std::string& def) const;
    double num(const std::string& key) const;
    double num_or(const std::string& key, double def) const;
    int64_t integer(const std::string& key) const;
    int64_t int_or(const std::string& key, int64_t def) const;
    uint64_t uint_or(const std::string& key, uint64_t def) const;
    std::vector<int64_t> int_list(const std::string& key) const;
    std::vector<double> num_list(const std::string& key) const;

    std::string echo() const; // canonical serialization (sorted keys)
    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

} // namespace th
