#include "mintent/common.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace mintent {

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == delim) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double_strict(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) throw SchemaError("empty numeric field");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) {
    throw SchemaError("failed to parse number '" + t + "'");
  }
  return v;
}

long parse_long_strict(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) throw SchemaError("empty integer field");
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size()) {
    throw SchemaError("failed to parse integer '" + t + "'");
  }
  return v;
}

}  // namespace mintent
