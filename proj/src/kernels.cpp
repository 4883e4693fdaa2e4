#include "nhflip/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace nhflip::kernels {

namespace {

const Backend& pick_backend() {
  const char* forced = std::getenv("NHFLIP_KERNELS");
  if (forced) {
    if (std::strcmp(forced, "scalar") == 0) return scalar_backend();
    if (std::strcmp(forced, "avx2") == 0 && avx2_backend()) return *avx2_backend();
    if (std::strcmp(forced, "neon") == 0 && neon_backend()) return *neon_backend();
    return scalar_backend();
  }
  if (const Backend* b = avx2_backend()) return *b;
  if (const Backend* b = neon_backend()) return *b;
  return scalar_backend();
}

}  // namespace

const Backend& active_backend() {
  static const Backend& b = pick_backend();
  return b;
}

}  // namespace nhflip::kernels
