#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "hlcu/errors.hpp"

namespace hlcu::cli {

class ConfigError : public Error {
 public:
  using Error::Error;
};

// "key = value" lines; "[section]" prefixes following keys with "section.";
// '#' starts a comment.
class Config {
 public:
  static Config parse(std::istream& is, const std::string& source = "<config>");
  static Config load(const std::string& path);

  // Rejects keys that are not in `known`.
  void check_known(const std::map<std::string, std::string>& known) const;
  // Value from the file, else the default from `known`.
  std::string value(const std::map<std::string, std::string>& known, const std::string& key) const;
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

double to_double(const std::string& key, const std::string& v);
std::int64_t to_int(const std::string& key, const std::string& v);
std::vector<double> to_list(const std::string& key, const std::string& v);

}  // namespace hlcu::cli
