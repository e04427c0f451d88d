#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>

namespace vacfree {

using Index = std::int64_t;

// Closed finite range [lo, hi] of a bi-infinite index set.
struct IndexWindow {
  Index lo = 0;
  Index hi = 0;

  IndexWindow() = default;
  IndexWindow(Index lo_, Index hi_);  // throws ConfigError when lo > hi

  std::size_t size() const { return static_cast<std::size_t>(hi - lo + 1); }
  bool contains(Index p) const { return lo <= p && p <= hi; }
  std::size_t offset(Index p) const { return static_cast<std::size_t>(p - lo); }
  bool operator==(const IndexWindow&) const = default;
};

// Finite set of indices q_j with nonzero energy displacements delta_j.
class Deformation {
 public:
  Deformation() = default;
  explicit Deformation(std::map<Index, double> deltas);  // throws ConfigError on a zero delta

  const std::map<Index, double>& deltas() const { return deltas_; }
  bool empty() const { return deltas_.empty(); }
  std::size_t size() const { return deltas_.size(); }

 private:
  std::map<Index, double> deltas_;
};

// Real eigenvalue sequence p -> eps_p over all integers. Immutable; evaluation is a
// pure function so windows of any size cost only what is queried.
class Spectrum {
 public:
  using Eval = std::function<double(Index)>;
  using Params = std::map<std::string, double>;

  Spectrum(Eval eval, std::string label, Params params = {}, bool monotone = true);

  double operator()(Index p) const { return (*eval_)(p); }

  const std::string& label() const { return label_; }
  const Params& params() const { return params_; }

  // False for deformed spectra: the ordering contract is no longer promised and must
  // be checked with assert_strictly_increasing.
  bool monotone() const { return monotone_; }

 private:
  friend Spectrum shift_spectrum(const Spectrum&, double);

  std::shared_ptr<const Eval> eval_;
  std::string label_;
  Params params_;
  bool monotone_ = true;
  // Set when this spectrum is `parent + shift_amount_`; lets the inverse shift hand
  // back the parent itself.
  std::shared_ptr<const Spectrum> parent_;
  double shift_amount_ = 0.0;
};

double eval_spectrum(const Spectrum& spec, Index p);

// eps'_p = eps_p + gamma. Shifting back by -gamma returns the original exactly.
Spectrum shift_spectrum(const Spectrum& spec, double gamma);

// eps'_q = eps_q + delta_q on the deformation set, unchanged elsewhere. The result is
// never flagged monotone.
Spectrum deform_spectrum(const Spectrum& spec, const Deformation& d);

// True iff eps is strictly increasing and nowhere zero on the window.
bool assert_strictly_increasing(const Spectrum& spec, IndexWindow w);

// Constant spectrum, mostly useful as a pathological input.
Spectrum constant_spectrum(double value);

}  // namespace vacfree
