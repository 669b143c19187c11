#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wangkit/errors.hpp"

namespace wangkit {

// Reproducibility record for one CLI run: the subcommand, every parameter,
// digests of the input files, and the outcome. Two runs with identical
// manifests produce byte-identical outputs.
struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> params;  // sorted by construction
  std::map<std::string, std::string> input_digests;
  std::string outcome = "ok";

  void set(const std::string& key, const std::string& value) {
    params[key] = value;
  }

  static std::string fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
      h ^= c;
      h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
  }

  void add_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read input file '" + path + "'");
    std::ostringstream data;
    data << in.rdbuf();
    input_digests[path] = fnv1a64(data.str());
  }

  void write(std::ostream& out) const {
    out << "manifest v1\n";
    out << "subcommand " << subcommand << '\n';
    for (const auto& [k, v] : params) out << "param " << k << ' ' << v << '\n';
    for (const auto& [p, d] : input_digests)
      out << "input " << p << " fnv64:" << d << '\n';
    out << "outcome " << outcome << '\n';
  }

  std::string text() const {
    std::ostringstream out;
    write(out);
    return out.str();
  }
};

}  // namespace wangkit
