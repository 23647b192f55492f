#include "specrec/identity_test.hpp"

#include <cmath>
#include <exception>
#include <random>

#include "specrec/errors.hpp"

namespace specrec {

IdentityReport identity_test(const Evaluator& f, const Evaluator& g, const SampleBox& box,
                             int samples, double tol, std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("identity_test: samples must be positive");
  if (box.re_lo > box.re_hi || box.im_lo > box.im_hi)
    throw InvalidArgument("identity_test: empty sampling box");

  IdentityReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.tol = tol;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ure(box.re_lo, box.re_hi);
  std::uniform_real_distribution<double> uim(box.im_lo, box.im_hi);

  for (int k = 0; k < samples; ++k) {
    Complex z;
    int tries = 0;
    do {
      z = Complex(ure(rng), box.im_lo == box.im_hi ? box.im_lo : uim(rng));
      if (++tries > 1000) throw InvalidArgument("identity_test: exclusion covers the box");
    } while (box.excluded && box.excluded(z));

    try {
      const double diff = std::abs(f(z) - g(z));
      if (!std::isfinite(diff)) {
        rep.failures.push_back({z, "non-finite difference"});
      } else if (diff > rep.max_diff) {
        rep.max_diff = diff;
        rep.worst_point = z;
      }
    } catch (const std::exception& e) {
      rep.failures.push_back({z, e.what()});
    }
  }
  rep.pass = rep.failures.empty() && rep.max_diff < tol;
  return rep;
}

}  // namespace specrec
