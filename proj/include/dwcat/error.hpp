#pragma once
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwcat {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace impl {
inline void append(std::ostringstream&) {}
template<typename T, typename... Rest>
void append(std::ostringstream& os, const T& first, const Rest&... rest) {
  os << first;
  append(os, rest...);
}
}  // namespace impl

template<typename... Args>
[[noreturn]] void fail(const Args&... args) {
  std::ostringstream os;
  impl::append(os, args...);
  throw Error(os.str());
}

inline long long mod(long long a, long long m) {
  if (m == 0)
    return a;
  long long r = a % m;
  return r < 0 ? r + m : r;
}

inline std::string tuple_str(const std::vector<int>& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

}  // namespace dwcat
