#include "qpke/common.hpp"
#include "qpke/errors.hpp"

#include <atomic>
#include <string>

namespace qpke {

namespace {
std::atomic<std::int64_t> g_dimension_cap{std::int64_t{1} << 16};
}

std::int64_t dimension_cap() { return g_dimension_cap.load(); }

void set_dimension_cap(std::int64_t cap) {
  if (cap < 1) throw std::invalid_argument("dimension cap must be positive");
  g_dimension_cap.store(cap);
}

void check_dimension(std::int64_t dim) {
  if (dim > dimension_cap()) {
    throw size_cap_error("matrix dimension " + std::to_string(dim) +
                         " exceeds cap " + std::to_string(dimension_cap()));
  }
}

std::uint64_t draw_bits(Rng& rng, int bits) {
  if (bits <= 0) return 0;
  return rng() >> (64 - bits);
}

}  // namespace qpke
