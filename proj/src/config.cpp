#include "varitas/config.hpp"

#include <cstdlib>
#include <string>

namespace varitas {

namespace {

template <class T>
void read_env(char const* name, T& out) {
  char const* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return;
  try {
    std::size_t used = 0;
    unsigned long long parsed = std::stoull(v, &used);
    if (used == std::string(v).size() && parsed > 0) out = static_cast<T>(parsed);
  } catch (std::exception const&) {
    // malformed values leave the default in place
  }
}

Limits& current() {
  static Limits l = Limits::from_env();
  return l;
}

}  // namespace

Limits Limits::from_env() {
  Limits l;
  read_env("VARITAS_CAP_ORDER", l.order_cap);
  read_env("VARITAS_CAP_BUDGET", l.budget);
  return l;
}

Limits const& limits() { return current(); }
void set_limits(Limits const& l) { current() = l; }

}  // namespace varitas
