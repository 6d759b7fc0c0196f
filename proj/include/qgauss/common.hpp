#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgauss {

using Int = mpz_class;
using Rational = mpq_class;

using IntVec = std::vector<Int>;
using IntMat = std::vector<std::vector<Int>>;
using RatVec = std::vector<Rational>;
using RatMat = std::vector<std::vector<Rational>>;

// Violated input precondition; CLI exit code 2.
class precondition_error : public std::runtime_error {
 public:
  precondition_error(std::string code, std::string detail)
      : std::runtime_error(code + ": " + detail),
        code_(std::move(code)),
        detail_(std::move(detail)) {}
  const std::string& code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string code_;
  std::string detail_;
};

// A mathematical identity the library guarantees failed to hold; CLI exit
// code 3. Must never fire on valid builds.
class internal_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Number of worker threads used by the brute-force enumerations. The result
// of every enumeration is independent of this value (exact arithmetic,
// deterministic chunk-ordered merging).
int thread_count();
void set_thread_count(int k);

// Canonicalized fraction constructor; mpq_class(num, den) alone does not
// reduce, and GMP comparison assumes canonical form.
inline Rational ratio(const Int& num, const Int& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline long to_long(const Int& z) {
  if (!z.fits_slong_p()) throw precondition_error("overflow", "integer too large for machine word");
  return z.get_si();
}

}  // namespace qgauss
