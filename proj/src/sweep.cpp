#include "lorentz3/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "lorentz3/curvature.hpp"
#include "lorentz3/json_io.hpp"

namespace lorentz3 {

namespace {

std::string num_str(const Rational& q) { return q.get_str(); }
std::string num_str(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
std::string num_str(const RealRoot& r) { return r.is_exact() ? r.exact_value().get_str() : num_str(r.approx()); }

// One sample's operator, or nullopt when the draw violates a constraint.
template <Scalar T>
struct Sampled {
  std::string family;
  std::vector<std::string> params;
  Mat3<T> K;
  std::optional<FamilyParams<T>> fp;
  std::optional<SymmetricSpaceSpec<T>> spec;
};

template <Scalar T>
T draw_value(std::mt19937_64& rng, ParamRange r, long max_den) {
  if constexpr (std::is_same_v<T, Rational>) {
    const long den = static_cast<long>(uniform_int(rng, 1, std::max(1L, max_den)));
    const auto lo = static_cast<std::int64_t>(std::ceil(r.lo * den));
    const auto hi = static_cast<std::int64_t>(std::floor(r.hi * den));
    Rational q(static_cast<long>(uniform_int(rng, lo, std::max(lo, hi))), den);
    q.canonicalize();
    return q;
  } else {
    (void)max_den;
    return uniform_real(rng, r.lo, r.hi);
  }
}

template <Scalar T>
std::optional<Sampled<T>> sample_symmetric(std::mt19937_64& rng, const SweepConfig& cfg, const Field<T>& field) {
  auto range = [&](const char* name) {
    const auto it = cfg.ranges.find(name);
    return it != cfg.ranges.end() ? it->second : ParamRange{};
  };
  Sampled<T> s;
  SymmetricSpaceSpec<T> spec;
  switch (uniform_int(rng, 0, 2)) {
    case 0: {
      const T c = draw_value<T>(rng, range("c"), cfg.max_denominator);
      spec = SpaceForm<T>{c};
      s.params = {num_str(c)};
      break;
    }
    case 1: {
      const T c = draw_value<T>(rng, range("c"), cfg.max_denominator);
      const bool lor = uniform_int(rng, 0, 1) == 1;
      if (field.sign(c) == 0) return std::nullopt;
      const ProductKind kind = field.sign(c) > 0 ? (lor ? ProductKind::R_x_S2_1 : ProductKind::S2_x_R_1)
                                                 : (lor ? ProductKind::R_x_H2_1 : ProductKind::H2_x_R_1);
      spec = Product<T>{kind, c};
      s.params = {num_str(c)};
      break;
    }
    default: {
      const int eps = uniform_int(rng, 0, 1) ? 1 : -1;
      const T alpha = draw_value<T>(rng, range("alpha"), cfg.max_denominator);
      spec = PlaneWaveLike<T>{eps, alpha, {}, {}};
      s.params = {std::to_string(eps), num_str(alpha)};
      break;
    }
  }
  s.family = spec_kind_name(spec, field);
  s.K = symmetric_operator(spec, field).K;
  s.spec = spec;
  return s;
}

template <Scalar T>
std::optional<Sampled<T>> sample_family(Family f, const FamilyParams<T>& p, const Field<T>& field) {
  try {
    check_constraints(p, field);
    Sampled<T> s;
    s.family = std::string(family_name(f));
    for (const auto& v : p.values) s.params.push_back(num_str(v));
    s.K = curvature_operator(build(p, field), field).K;
    s.fp = p;
    return s;
  } catch (const ConstraintViolation&) {
    return std::nullopt;
  } catch (const DegenerateMetric&) {
    return std::nullopt;
  }
}

template <Scalar T>
void fill_segre(SweepRow& row, const SegreData<T>& d) {
  row.segre_type = std::string(segre_type_name(d.type));
  const auto& e = d.eigenvalues;
  switch (d.type) {
    case SegreType::S111:
      for (int i = 0; i < 3; ++i) row.k[i] = num_str(e[i]);
      break;
    case SegreType::S1ZZ:
      row.k = {num_str(e[0]), num_str(d.pair_re), num_str(d.pair_im)};
      break;
    case SegreType::S21:
      row.k = {num_str(e[0]), num_str(e[1]), num_str(e[1])};
      break;
    case SegreType::S3:
      row.k = {num_str(e[0]), num_str(e[0]), num_str(e[0])};
      break;
  }
}

// Smallest distance between distinct eigenvalues (and the pair's imaginary
// part), as doubles.
double min_gap(const SegreData<double>& d) {
  std::vector<double> v(d.eigenvalues.begin(), d.eigenvalues.end());
  double gap = std::numeric_limits<double>::infinity();
  if (d.type == SegreType::S1ZZ) gap = d.pair_im;
  if (d.type == SegreType::S21) gap = std::abs(v[0] - v[1]);
  if (d.type == SegreType::S111)
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      if (v[i + 1] != v[i]) gap = std::min(gap, v[i + 1] - v[i]);
  return gap;
}

double max_abs_eig(const SegreData<double>& d) {
  double m = 0;
  for (double x : d.eigenvalues) m = std::max(m, std::abs(x));
  return std::max(m, std::hypot(d.pair_re, d.pair_im));
}

// Gaps below the approx backend's resolution are not compared: clustering
// merges anything within sqrt(tau) * scale.
bool comparable(const SegreData<double>& exact_as_double, double tau) {
  if (exact_as_double.type == SegreType::S21 &&
      Tolerance{tau}.equal(exact_as_double.eigenvalues[0], exact_as_double.eigenvalues[1]))
    return true;
  return min_gap(exact_as_double) > 10 * std::sqrt(tau) * std::max(1.0, max_abs_eig(exact_as_double));
}

bool agree(const SegreData<double>& a, const SegreData<double>& b) {
  return a.type == b.type && segre_close(a, b, 1e-6);
}

Mat3<Rational> exact_copy(const Mat3<double>& m) {
  Mat3<Rational> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = Rational(m(i, j));
  return out;
}

template <Scalar T>
SweepRow evaluate(std::size_t index, const Sampled<T>& s, const SweepConfig& cfg, bool crosscheck) {
  SweepRow row;
  row.index = index;
  row.family = s.family;
  row.params = s.params;
  row.backend = cfg.backend;
  const Field<T> field = [&] {
    if constexpr (std::is_same_v<T, Rational>) return Field<Rational>{};
    else return Field<double>{Tolerance{cfg.tau}};
  }();
  try {
    const SegreData<T> d = classify(s.K, field);
    fill_segre(row, d);
    const Verdict v = admissible(d, field);
    row.conditions = v.conditions;
    if (!v.admissible) row.flag = kFlagRejected;
    if (crosscheck && row.flag.empty()) {
      if constexpr (std::is_same_v<T, Rational>) {
        const SegreData<double> dd = to_double(d);
        if (comparable(dd, cfg.tau) &&
            !agree(classify(to_double(s.K), Field<double>{Tolerance{cfg.tau}}), dd))
          row.flag = kFlagBackend;
      } else {
        const SegreData<double> ex = to_double(classify(exact_copy(s.K)));
        if (comparable(ex, cfg.tau) && !agree(d, ex)) row.flag = kFlagBackend;
      }
    }
  } catch (const std::exception&) {
    row.flag = kFlagClassify;
  }
  return row;
}

std::vector<Family> families_of(const std::string& name, bool& symmetric) {
  symmetric = false;
  if (name == "all") {
    symmetric = true;
    return {kAllFamilies.begin(), kAllFamilies.end()};
  }
  if (name == "symmetric") {
    symmetric = true;
    return {};
  }
  const auto f = family_from_name(name);
  if (!f) throw std::invalid_argument("sweep: unknown family '" + name + "'");
  return {*f};
}

SampleSpec sample_spec(const SweepConfig& cfg) {
  SampleSpec spec;
  spec.ranges = cfg.ranges;
  spec.max_denominator = cfg.max_denominator;
  return spec;
}

template <Scalar T>
std::optional<SweepRow> random_row(std::size_t i, const SweepConfig& cfg, const std::vector<Family>& fams,
                                   bool symmetric) {
  std::mt19937_64 rng(derive_seed(cfg.seed, i));
  const std::size_t slots = fams.size() + (symmetric ? 1 : 0);
  const std::size_t slot = i % slots;
  const Field<T> field = [&] {
    if constexpr (std::is_same_v<T, Rational>) return Field<Rational>{};
    else return Field<double>{Tolerance{cfg.tau}};
  }();
  std::optional<Sampled<T>> s;
  if (slot < fams.size()) s = sample_family<T>(fams[slot], draw<T>(fams[slot], sample_spec(cfg), rng), field);
  else s = sample_symmetric<T>(rng, cfg, field);
  if (!s) return std::nullopt;
  const bool cross = uniform_real(rng, 0.0, 1.0) < cfg.crosscheck;
  return evaluate(i, *s, cfg, cross);
}

// Cartesian grid lo, lo+step, ..., <= hi for every parameter of one family.
std::vector<FamilyParams<Rational>> grid_points(Family f, const SweepConfig& cfg) {
  if (f == Family::NA) throw std::invalid_argument("sweep: grid mode does not support family NA");
  const Rational step = parse_rational(cfg.step);
  if (sgn(step) <= 0) throw std::invalid_argument("sweep: grid step must be positive");
  std::vector<std::vector<Rational>> axes;
  for (const auto& name : param_names(f)) {
    const auto it = cfg.ranges.find(name);
    const ParamRange r = it != cfg.ranges.end() ? it->second : default_range(f, name);
    const Rational lo(r.lo), hi(r.hi);
    std::vector<Rational> axis;
    for (Rational x = lo; x <= hi; x += step) axis.push_back(x);
    axes.push_back(std::move(axis));
  }
  std::vector<FamilyParams<Rational>> out{{f, {}}};
  for (const auto& axis : axes) {
    std::vector<FamilyParams<Rational>> next;
    for (const auto& p : out)
      for (const auto& x : axis) {
        auto q = p;
        q.values.push_back(x);
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

FamilyParams<double> params_to_double(const FamilyParams<Rational>& p) {
  FamilyParams<double> out{p.family, {}};
  for (const auto& v : p.values) out.values.push_back(v.get_d());
  return out;
}

template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  threads = std::max(1, threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += threads) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

long SweepReport::flagged() const {
  return std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.flag.empty(); });
}

SweepReport run_sweep(const SweepConfig& cfg) {
  if (cfg.mode != "random" && cfg.mode != "grid") throw std::invalid_argument("sweep: mode must be random or grid");
  if (cfg.max_denominator < 1) throw std::invalid_argument("sweep: max_denominator must be >= 1");
  for (const auto& [name, r] : cfg.ranges)
    if (!(r.lo <= r.hi)) throw std::invalid_argument("sweep: empty range for " + name);
  bool symmetric = false;
  const std::vector<Family> fams = families_of(cfg.family, symmetric);

  std::vector<std::optional<SweepRow>> slots;
  if (cfg.mode == "random") {
    if (cfg.samples < 0) throw std::invalid_argument("sweep: samples must be >= 0");
    slots.resize(cfg.samples);
    parallel_for(slots.size(), cfg.threads, [&](std::size_t i) {
      slots[i] = cfg.backend == Backend::exact ? random_row<Rational>(i, cfg, fams, symmetric)
                                               : random_row<double>(i, cfg, fams, symmetric);
    });
  } else {
    if (fams.size() != 1 || symmetric) throw std::invalid_argument("sweep: grid mode needs a single family");
    const auto pts = grid_points(fams[0], cfg);
    slots.resize(pts.size());
    parallel_for(pts.size(), cfg.threads, [&](std::size_t i) {
      std::mt19937_64 rng(derive_seed(cfg.seed, i));
      const bool cross = uniform_real(rng, 0.0, 1.0) < cfg.crosscheck;
      if (cfg.backend == Backend::exact) {
        if (auto s = sample_family<Rational>(fams[0], pts[i], {})) slots[i] = evaluate(i, *s, cfg, cross);
      } else {
        const Field<double> field{Tolerance{cfg.tau}};
        if (auto s = sample_family<double>(fams[0], params_to_double(pts[i]), field)) slots[i] = evaluate(i, *s, cfg, cross);
      }
    });
  }

  SweepReport r;
  r.requested = static_cast<long>(slots.size());
  for (auto& s : slots) {
    if (s) r.rows.push_back(std::move(*s));
    else ++r.rejected;
  }
  return r;
}

RegionSummary region_summary(const SweepReport& r) {
  RegionSummary s;
  for (const auto& row : r.rows) {
    ++s.by_family_type[{row.family, row.segre_type}];
    for (const auto& c : row.conditions) ++s.by_condition[c];
    if (!row.flag.empty()) ++s.by_flag[row.flag];
  }
  return s;
}

std::string to_csv(const SweepReport& r) {
  std::ostringstream os;
  os << "family,param_1,param_2,param_3,param_4,segre_type,k1,k2,k3,conditions,backend,flag\n";
  for (const auto& row : r.rows) {
    os << row.family;
    for (std::size_t i = 0; i < 4; ++i) os << ',' << (i < row.params.size() ? row.params[i] : "");
    os << ',' << row.segre_type;
    for (const auto& k : row.k) os << ',' << k;
    os << ',';
    for (std::size_t i = 0; i < row.conditions.size(); ++i) os << (i ? ";" : "") << row.conditions[i];
    os << ',' << backend_name(row.backend) << ',' << row.flag << '\n';
  }
  return os.str();
}

void write_report(const SweepReport& r, const SweepConfig& cfg) {
  if (cfg.output.empty()) return;
  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IoError("write failed: " + path);
  };
  if (cfg.format == "csv" || cfg.format == "both") write(cfg.output + ".csv", to_csv(r));
  if (cfg.format == "json" || cfg.format == "both") write(cfg.output + ".json", report_to_json(r).dump(2) + "\n");
}

}  // namespace lorentz3
