#pragma once

#include <mpfr.h>

namespace snaplab::dio {

// Owning wrapper around an mpfr_t.
class Mpfr {
public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
  ~Mpfr() { mpfr_clear(x_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;

  mpfr_ptr get() noexcept { return x_; }
  mpfr_srcptr get() const noexcept { return x_; }

private:
  mpfr_t x_;
};

}  // namespace snaplab::dio
