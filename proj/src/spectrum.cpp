#include "vacfree/spectrum.hpp"

#include <sstream>
#include <utility>

#include "vacfree/errors.hpp"

namespace vacfree {

IndexWindow::IndexWindow(Index lo_, Index hi_) : lo(lo_), hi(hi_) {
  if (lo > hi) {
    std::ostringstream msg;
    msg << "empty index window [" << lo << ", " << hi << "]";
    throw ConfigError(msg.str());
  }
}

Deformation::Deformation(std::map<Index, double> deltas) : deltas_(std::move(deltas)) {
  for (const auto& [q, delta] : deltas_) {
    if (delta == 0.0) {
      throw ConfigError("deformation delta at index " + std::to_string(q) + " is zero");
    }
  }
}

Spectrum::Spectrum(Eval eval, std::string label, Params params, bool monotone)
    : eval_(std::make_shared<const Eval>(std::move(eval))),
      label_(std::move(label)),
      params_(std::move(params)),
      monotone_(monotone) {}

double eval_spectrum(const Spectrum& spec, Index p) { return spec(p); }

Spectrum shift_spectrum(const Spectrum& spec, double gamma) {
  if (gamma == 0.0) {
    return spec;
  }
  if (spec.parent_ && spec.shift_amount_ == -gamma) {
    return *spec.parent_;
  }
  auto parent = std::make_shared<const Spectrum>(spec);
  std::ostringstream label;
  label << spec.label() << " + " << gamma;
  Spectrum out([parent, gamma](Index p) { return (*parent)(p) + gamma; }, label.str(),
               spec.params(), spec.monotone());
  out.parent_ = std::move(parent);
  out.shift_amount_ = gamma;
  return out;
}

Spectrum deform_spectrum(const Spectrum& spec, const Deformation& d) {
  auto deltas = d.deltas();
  Spectrum base = spec;
  std::ostringstream label;
  label << spec.label() << " deformed at " << deltas.size() << " indices";
  return Spectrum(
      [base, deltas](Index p) {
        const double e = base(p);
        const auto it = deltas.find(p);
        return it == deltas.end() ? e : e + it->second;
      },
      label.str(), spec.params(), /*monotone=*/false);
}

bool assert_strictly_increasing(const Spectrum& spec, IndexWindow w) {
  double prev = spec(w.lo);
  if (prev == 0.0) {
    return false;
  }
  for (Index p = w.lo + 1; p <= w.hi; ++p) {
    const double e = spec(p);
    if (e == 0.0 || !(prev < e)) {
      return false;
    }
    prev = e;
  }
  return true;
}

Spectrum constant_spectrum(double value) {
  return Spectrum([value](Index) { return value; }, "constant", {{"value", value}}, false);
}

}  // namespace vacfree
