// SPDX-License-Identifier: Apache-2.0

#include "rwg/dist.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rwg/kernels.hpp"

namespace rwg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog2 = std::log(2.0);

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

void require_positive_finite(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    reject(std::string("distribution parameter '") + name + "' must be positive and finite");
  }
}

// log(2 cosh a), overflow-safe.
double log_two_cosh(double a) {
  a = std::fabs(a);
  return a + std::log1p(std::exp(-2.0 * a));
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

StepTailSpec StepTailSpec::defaults(int truncation) {
  if (truncation < 3) reject("steptail truncation must be at least 3");
  StepTailSpec spec;
  spec.x.resize(static_cast<std::size_t>(truncation));
  spec.y.resize(static_cast<std::size_t>(truncation) + 1);
  spec.y[0] = kLog2;
  for (int k = 1; k <= truncation; ++k) {
    spec.x[static_cast<std::size_t>(k - 1)] = static_cast<double>(k);
    spec.y[static_cast<std::size_t>(k)] = std::ldexp(1.0, k * k);  // 2^{k^2}, exact
  }
  return spec;
}

Distribution Distribution::gaussian(double sigma) {
  require_positive_finite(sigma, "sigma");
  return Distribution(DistKind::Gaussian, sigma);
}

Distribution Distribution::laplace(double scale) {
  require_positive_finite(scale, "scale");
  return Distribution(DistKind::Laplace, scale);
}

Distribution Distribution::uniform(double half_width) {
  require_positive_finite(half_width, "half-width");
  return Distribution(DistKind::Uniform, half_width);
}

Distribution Distribution::rademacher() {
  Distribution d(DistKind::Rademacher, 1.0);
  d.atoms_ = {1.0};
  d.atom_log_mass_ = {-kLog2};
  d.atom_cum_mass_ = {0.5};
  return d;
}

Distribution Distribution::degenerate() { return Distribution(DistKind::Degenerate, 0.0); }

Distribution Distribution::step_tail(int truncation) {
  return step_tail(StepTailSpec::defaults(truncation));
}

Distribution Distribution::step_tail(StepTailSpec spec) {
  const std::size_t k = spec.x.size();
  if (k < 3) reject("steptail x-sequence must have at least 3 atoms");
  if (spec.y.size() != k + 1) reject("steptail y-sequence must have one more entry than x");
  if (std::fabs(spec.y[0] - kLog2) > 1e-12) reject("steptail y_0 must equal log 2");
  spec.y[0] = kLog2;
  if (!(spec.x[0] > 0.0)) reject("steptail x-sequence must be positive");
  for (std::size_t i = 1; i < k; ++i) {
    if (!(spec.x[i] > spec.x[i - 1])) reject("steptail x-sequence must be strictly increasing");
  }
  for (std::size_t i = 1; i <= k; ++i) {
    if (!(spec.y[i] > spec.y[i - 1])) reject("steptail y-sequence must be strictly increasing");
  }

  Distribution d(DistKind::StepTail, static_cast<double>(k));
  d.atoms_ = spec.x;
  d.atom_log_mass_.resize(k);
  d.atom_cum_mass_.resize(k);
  // p_i = e^{-y_{i-1}} - e^{-y_i} for i < K; the last atom absorbs e^{-y_{K-1}}.
  for (std::size_t i = 0; i + 1 < k; ++i) {
    d.atom_log_mass_[i] = -spec.y[i] + std::log1p(-std::exp(-(spec.y[i + 1] - spec.y[i])));
  }
  d.atom_log_mass_[k - 1] = -spec.y[k - 1];
  double cum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    cum += std::exp(d.atom_log_mass_[i]);
    d.atom_cum_mass_[i] = cum;
  }
  d.atom_cum_mass_[k - 1] = 0.5;  // absorbs residual exactly
  d.step_ = std::move(spec);
  return d;
}

double Distribution::tail(double t) const {
  if (!(t >= 0.0)) reject("tail(t) requires t >= 0");
  switch (kind_) {
    case DistKind::Gaussian: {
      const double z = t / (param_ * std::sqrt(2.0));
      if (z < 26.0) return 0.5 * std::erfc(z);
      return std::exp(log_tail(t));  // below erfc underflow, use the log-space form
    }
    case DistKind::Laplace:
      return 0.5 * std::exp(-t / param_);
    case DistKind::Uniform:
      return t >= param_ ? 0.0 : (param_ - t) / (2.0 * param_);
    case DistKind::Rademacher:
      return t >= 1.0 ? 0.0 : 0.5;
    case DistKind::StepTail: {
      // count of atoms <= t gives the step index; P(X > x_k) = e^{-y_k}
      const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), t);
      const std::size_t idx = static_cast<std::size_t>(it - atoms_.begin());
      if (idx == atoms_.size()) return 0.0;
      return std::exp(-step_.y[idx]);
    }
    case DistKind::Degenerate:
      return 0.0;
  }
  return 0.0;
}

double Distribution::log_tail(double t) const {
  if (!(t >= 0.0)) reject("log_tail(t) requires t >= 0");
  switch (kind_) {
    case DistKind::Gaussian: {
      // erfc is accurate to a few ulp all the way down to its underflow
      // near z = 37; hand over to the Mills-ratio asymptotic series just
      // before that point, where its truncation error is ~1e-16.
      const double z = t / param_;
      if (z <= 36.0) return std::log(0.5 * std::erfc(z / std::sqrt(2.0)));
      const double z2 = z * z;
      const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2) +
                            105.0 / (z2 * z2 * z2 * z2);
      return -0.5 * z2 - std::log(z) - 0.5 * std::log(2.0 * M_PI) + std::log(series);
    }
    case DistKind::Laplace:
      return -kLog2 - t / param_;
    case DistKind::Uniform:
      return t >= param_ ? -kInf : std::log((param_ - t) / (2.0 * param_));
    case DistKind::Rademacher:
      return t >= 1.0 ? -kInf : -kLog2;
    case DistKind::StepTail: {
      const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), t);
      const std::size_t idx = static_cast<std::size_t>(it - atoms_.begin());
      if (idx == atoms_.size()) return -kInf;
      return -step_.y[idx];
    }
    case DistKind::Degenerate:
      return -kInf;
  }
  return -kInf;
}

double Distribution::log_mgf(double s) const {
  if (s == 0.0) return 0.0;
  switch (kind_) {
    case DistKind::Gaussian: {
      const double z = param_ * s;
      return 0.5 * z * z;
    }
    case DistKind::Laplace: {
      const double z = std::fabs(param_ * s);
      if (z >= 1.0) return kInf;
      return -std::log1p(-z * z);
    }
    case DistKind::Uniform: {
      // log(sinh z / z) = z + log(1 - e^{-2z}) - log(2z), stable for all z > 0
      const double z = std::fabs(param_ * s);
      return z + std::log(-std::expm1(-2.0 * z)) - std::log(2.0 * z);
    }
    case DistKind::Rademacher: {
      const double a = std::fabs(s);
      if (a < 20.0) return std::log(std::cosh(a));
      return a - kLog2 + std::log1p(std::exp(-2.0 * a));
    }
    case DistKind::StepTail: {
      // logsumexp over atoms of log(p_k) + log(2 cosh(s x_k))
      double m = -kInf;
      const std::size_t k = atoms_.size();
      std::vector<double> terms(k);
      for (std::size_t i = 0; i < k; ++i) {
        terms[i] = atom_log_mass_[i] + log_two_cosh(s * atoms_[i]);
        m = std::max(m, terms[i]);
      }
      double acc = 0.0;
      for (std::size_t i = 0; i < k; ++i) acc += std::exp(terms[i] - m);
      return m + std::log(acc);
    }
    case DistKind::Degenerate:
      return 0.0;
  }
  return 0.0;
}

double Distribution::ess_sup() const {
  switch (kind_) {
    case DistKind::Gaussian:
    case DistKind::Laplace:
      return kInf;
    case DistKind::Uniform:
      return param_;
    case DistKind::Rademacher:
      return 1.0;
    case DistKind::StepTail:
      return atoms_.back();
    case DistKind::Degenerate:
      return 0.0;
  }
  return kInf;
}

double Distribution::sample(RngStream& stream) const {
  double out;
  fill(std::span<double>(&out, 1), stream.seed, stream.stream, stream.next);
  stream.next += 1;
  return out;
}

void Distribution::fill(std::span<double> out, std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t index0) const {
  const auto& backend = kernels::active();
  switch (kind_) {
    case DistKind::Gaussian:
      backend.fill_gaussian(seed, stream, index0, out.size(), param_, out.data());
      return;
    case DistKind::Laplace:
      backend.fill_laplace(seed, stream, index0, out.size(), param_, out.data());
      return;
    case DistKind::Uniform:
      backend.fill_uniform(seed, stream, index0, out.size(), param_, out.data());
      return;
    case DistKind::Rademacher:
      backend.fill_rademacher(seed, stream, index0, out.size(), out.data());
      return;
    case DistKind::StepTail: {
      for (std::size_t i = 0; i < out.size(); ++i) {
        const double u = kernels::u01(kernels::raw64(seed, stream, index0 + i));
        const double q = u - 0.5;
        const double m = (q < 0.0) ? -q : q;  // one-sided mass coordinate in (0, 1/2)
        std::size_t k = 0;
        while (k + 1 < atom_cum_mass_.size() && m >= atom_cum_mass_[k]) ++k;
        out[i] = (q < 0.0) ? -atoms_[k] : atoms_[k];
      }
      return;
    }
    case DistKind::Degenerate:
      std::fill(out.begin(), out.end(), 0.0);
      return;
  }
}

std::string Distribution::spec_string() const {
  const auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  switch (kind_) {
    case DistKind::Gaussian:
      return "gaussian:" + num(param_);
    case DistKind::Laplace:
      return "laplace:" + num(param_);
    case DistKind::Uniform:
      return "uniform:" + num(param_);
    case DistKind::Rademacher:
      return "rademacher";
    case DistKind::StepTail:
      return "steptail:" + std::to_string(atoms_.size());
    case DistKind::Degenerate:
      return "degenerate";
  }
  return "";
}

Distribution Distribution::parse(std::string_view spec) {
  const std::string lowered = to_lower(spec);
  std::string_view name{lowered};
  std::string_view arg;
  if (const auto colon = lowered.find(':'); colon != std::string::npos) {
    name = std::string_view(lowered).substr(0, colon);
    arg = std::string_view(lowered).substr(colon + 1);
  }
  const auto parse_real = [&](double fallback) {
    if (arg.empty()) return fallback;
    double v{};
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), v);
    if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
      reject("malformed distribution parameter '" + std::string(arg) + "'");
    }
    return v;
  };
  if (name == "gaussian") return gaussian(parse_real(1.0));
  if (name == "laplace") return laplace(parse_real(1.0));
  if (name == "uniform") return uniform(parse_real(1.0));
  if (name == "rademacher") {
    if (!arg.empty()) reject("rademacher takes no parameter");
    return rademacher();
  }
  if (name == "steptail") {
    if (arg.empty()) return step_tail(12);
    int k{};
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
      reject("malformed steptail truncation '" + std::string(arg) + "'");
    }
    return step_tail(k);
  }
  reject("unknown distribution '" + std::string(spec) +
         "' (expected gaussian[:sigma], laplace[:scale], uniform[:a], rademacher, steptail[:K])");
}

}  // namespace rwg
