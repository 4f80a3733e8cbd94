#include "krein/discretize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "krein/error.hpp"

namespace krein {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Grid1D make_grid(double a, double b, std::size_t m) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b))
    fail(ErrorCode::InvalidArgument, "grid: need a < b");
  if (m < 8) fail(ErrorCode::InvalidArgument, "grid: need at least 8 interior nodes");
  return {a, b, m};
}

PotentialSpec PotentialSpec::constant(double c) {
  if (!(c >= 0.0) || !std::isfinite(c))
    fail(ErrorCode::InvalidArgument, "potential: constant must be finite and nonnegative");
  return PotentialSpec(Kind::Constant, c, {});
}

PotentialSpec PotentialSpec::sampled(std::vector<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) {
      fail(ErrorCode::InvalidArgument,
           "potential: sample " + std::to_string(i + 1) + " must be finite and nonnegative");
    }
  }
  return PotentialSpec(Kind::Sampled, 0.0, std::move(values));
}

std::vector<double> PotentialSpec::values(const Grid1D& grid) const {
  switch (kind_) {
    case Kind::Zero:
      return std::vector<double>(grid.m, 0.0);
    case Kind::Constant:
      return std::vector<double>(grid.m, constant_);
    case Kind::Sampled:
      if (samples_.size() != grid.m) {
        fail(ErrorCode::InvalidArgument, "potential: " + std::to_string(samples_.size()) +
                                             " samples for " + std::to_string(grid.m) + " nodes");
      }
      return samples_;
  }
  return {};
}

PotentialSpec read_potential_csv(std::istream& in, std::size_t expected_count) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view field = trim(line);
    if (field.empty()) continue;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(line_no) + ": not a number: '" + std::string(field) + "'");
    }
    if (!(v >= 0.0) || !std::isfinite(v)) {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(line_no) + ": potential must be finite and nonnegative");
    }
    values.push_back(v);
  }
  if (values.size() != expected_count) {
    fail(ErrorCode::ParseError, "expected " + std::to_string(expected_count) + " values, found " +
                                    std::to_string(values.size()));
  }
  return PotentialSpec::sampled(std::move(values));
}

PotentialSpec read_potential_csv(const std::filesystem::path& path, std::size_t expected_count) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  return read_potential_csv(in, expected_count);
}

ExtensionModel interval_model(const Grid1D& grid, const PotentialSpec& v) {
  const Grid1D g = make_grid(grid.a, grid.b, grid.m);
  const std::size_t m = g.m;
  const double inv_h2 = 1.0 / (g.h() * g.h());
  const std::vector<double> pot = v.values(g);
  Matrix a(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    a(i, i) = 2.0 * inv_h2 + pot[i];
    if (i + 1 < m) a(i, i + 1) = a(i + 1, i) = -inv_h2;
  }
  Matrix q(m, m - 2);
  for (std::size_t j = 0; j + 2 < m; ++j) q(j + 1, j) = 1.0;
  return new_model(SymMatrix(a), q);
}

Spectrum discrete_krein_spectrum(const ExtensionModel& model, std::size_t count) {
  if (count == 0 || count > model.domain_dim())
    fail(ErrorCode::InvalidArgument, "discrete_krein_spectrum: count out of range");
  const std::vector<double> values = buckling_pencil_values(model);
  Spectrum s;
  s.kernel = KernelDimension::finite(model.deficiency());
  s.entries.reserve(count);
  for (std::size_t j = 0; j < count; ++j) s.entries.push_back({values[j], 1});
  s.complete_below = values[count - 1];
  return s;
}

double RadialChannelSpec::coefficient() const noexcept {
  const double nn = n;
  const double ll = l;
  return ll * (ll + nn - 2.0) + (nn - 1.0) * (nn - 3.0) / 4.0;
}

RadialPencil radial_pencil(const RadialChannelSpec& spec) {
  if (spec.n < 2) fail(ErrorCode::InvalidArgument, "radial: dimension must be at least 2");
  if (spec.n == 2 && spec.l == 0) {
    fail(ErrorCode::UnsupportedChannel,
         "radial: the n = 2, l = 0 channel has a critical -1/(4 r^2) potential");
  }
  if (!(spec.radius > 0.0)) fail(ErrorCode::InvalidArgument, "radial: radius must be positive");
  if (spec.m < 8) fail(ErrorCode::InvalidArgument, "radial: need at least 8 nodes");

  const std::size_t m = spec.m;
  const double big_r = spec.radius;
  const bool krein = spec.bc == Realization::Krein;
  const double h = krein ? big_r / static_cast<double>(m) : big_r / static_cast<double>(m + 1);
  const double inv_h2 = 1.0 / (h * h);
  const double c = spec.coefficient();

  RadialPencil p;
  p.nodes.resize(m);
  p.stiffness.diag.resize(m);
  p.stiffness.offdiag.assign(m - 1, -inv_h2);
  p.mass.assign(m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = static_cast<double>(i + 1) * h;
    p.nodes[i] = r;
    p.stiffness.diag[i] = 2.0 * inv_h2 + c / (r * r);
  }
  if (krein) {
    // Ghost node f_{m+1} = f_{m-1} + 2 h alpha f_m, then the row is halved.
    const double alpha = (spec.l + (spec.n - 1.0) / 2.0) / big_r;
    p.nodes[m - 1] = big_r;
    p.stiffness.diag[m - 1] = (1.0 - h * alpha) * inv_h2 + c / (2.0 * big_r * big_r);
    p.mass[m - 1] = 0.5;
  }
  return p;
}

std::vector<double> pencil_lowest(const RadialPencil& pencil, std::size_t count) {
  // M^{-1/2} K M^{-1/2} keeps the tridiagonal shape.
  Tridiagonal t = pencil.stiffness;
  const std::size_t m = t.order();
  std::vector<double> scale(m);
  for (std::size_t i = 0; i < m; ++i) scale[i] = 1.0 / std::sqrt(pencil.mass[i]);
  for (std::size_t i = 0; i < m; ++i) t.diag[i] *= scale[i] * scale[i];
  for (std::size_t i = 0; i + 1 < m; ++i) t.offdiag[i] *= scale[i] * scale[i + 1];
  return tridiagonal_lowest(t, count);
}

Spectrum radial_spectrum(const RadialChannelSpec& spec, std::size_t count) {
  if (count == 0) fail(ErrorCode::InvalidArgument, "radial_spectrum: count must be positive");
  const RadialPencil p = radial_pencil(spec);
  const bool krein = spec.bc == Realization::Krein;
  const std::size_t skip = krein ? 1 : 0;
  if (count + skip > spec.m) fail(ErrorCode::InvalidArgument, "radial_spectrum: count exceeds grid");
  const std::vector<double> values = pencil_lowest(p, count + skip);
  if (krein && !(std::abs(values[0]) < 0.5 * values[1])) {
    fail(ErrorCode::NoConvergence,
         "radial_spectrum: no near-zero Krein eigenvalue (" + std::to_string(values[0]) + ")");
  }
  Spectrum s;
  s.kernel = KernelDimension::finite(skip);
  for (std::size_t j = skip; j < values.size(); ++j) s.entries.push_back({values[j], 1});
  s.complete_below = values.back();
  return s;
}

ConvergenceResult convergence_order(const std::function<double(std::size_t)>& run,
                                    std::span<const std::size_t> sizes, double target) {
  if (sizes.size() < 3) fail(ErrorCode::InvalidArgument, "convergence_order: need three sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] != 2 * sizes[i - 1])
      fail(ErrorCode::InvalidArgument, "convergence_order: sizes must double");
  }
  ConvergenceResult r;
  r.sizes.assign(sizes.begin(), sizes.end());
  for (std::size_t m : sizes) {
    const double v = run(m);
    r.values.push_back(v);
    r.errors.push_back(std::abs(v - target));
  }
  for (std::size_t i = 0; i < r.errors.size(); ++i) {
    const bool decreasing = i == 0 || r.errors[i] < r.errors[i - 1];
    if (!(r.errors[i] > 0.0) || !decreasing) {
      std::string data;
      for (std::size_t j = 0; j < r.errors.size(); ++j)
        data += " m=" + std::to_string(r.sizes[j]) + ":" + std::to_string(r.errors[j]);
      fail(ErrorCode::NonMonotoneError, "convergence_order: errors do not decrease;" + data);
    }
  }
  // Slope of log err against log h with h proportional to 1/m.
  const std::size_t k = sizes.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double x = -std::log(static_cast<double>(r.sizes[i]));
    const double y = std::log(r.errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double kk = static_cast<double>(k);
  r.order = (kk * sxy - sx * sy) / (kk * sxx - sx * sx);
  const double fine = r.values[k - 1];
  const double coarse = r.values[k - 2];
  r.extrapolated = fine + (fine - coarse) / (std::pow(2.0, r.order) - 1.0);
  return r;
}

}  // namespace krein
