#include "lorentz3/json_io.hpp"

#include <cmath>
#include <limits>

namespace lorentz3 {

namespace {

using AnyScalar = std::variant<Rational, double>;

AnyScalar scalar_from(const json& v, const std::string& field) {
  if (v.is_number_integer() || v.is_number_unsigned()) {
    // Through the decimal text so 64-bit values stay exact.
    return parse_rational(v.dump());
  }
  if (v.is_number_float()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      if (looks_like_float(s)) {
        std::size_t used = 0;
        const double x = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return x;
      }
      return parse_rational(s);
    } catch (const std::exception&) {
      throw InvalidInput(field + ": not a number: '" + s + "'");
    }
  }
  throw InvalidInput(field + ": expected a number or a rational string");
}

AnyScalars collect(const std::vector<AnyScalar>& xs) {
  const bool approx = std::any_of(xs.begin(), xs.end(), [](const AnyScalar& x) { return x.index() == 1; });
  if (!approx) {
    std::vector<Rational> out;
    for (const auto& x : xs) out.push_back(std::get<Rational>(x));
    return out;
  }
  std::vector<double> out;
  for (const auto& x : xs) out.push_back(x.index() == 0 ? std::get<Rational>(x).get_d() : std::get<double>(x));
  return out;
}

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(where + ": missing field '" + key + "'");
  return j.at(key);
}

template <Scalar T>
Mat3<T> mat_from(const std::vector<T>& v, const std::string& field) {
  if (v.size() != 9) throw InvalidInput(field + ": expected a 3x3 matrix");
  Mat3<T> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = v[3 * i + j];
  return m;
}

// Row-major flattening of [[..],[..],[..]].
std::vector<AnyScalar> flat_matrix(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) throw InvalidInput(field + ": expected a 3x3 array");
  std::vector<AnyScalar> out;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 3) throw InvalidInput(field + ": expected a 3x3 array");
    for (const auto& x : row) out.push_back(scalar_from(x, field));
  }
  return out;
}

std::vector<AnyScalar> flat_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw InvalidInput(field + ": expected an array");
  std::vector<AnyScalar> out;
  for (const auto& x : j) out.push_back(scalar_from(x, field));
  return out;
}

template <Scalar T>
SegreData<T> segre_from_values(SegreType type, const std::vector<T>& e) {
  auto need_n = [&](std::size_t n) {
    if (e.size() != n)
      throw InvalidInput("eigenvalues: " + std::string(segre_type_name(type)) + " takes " + std::to_string(n) +
                         " values");
  };
  switch (type) {
    case SegreType::S111:
      need_n(3);
      return segre_111<T>(e[0], e[1], e[2]);
    case SegreType::S21:
      need_n(2);
      return segre_21<T>(e[0], e[1]);
    case SegreType::S3:
      need_n(1);
      return segre_3<T>(e[0]);
    case SegreType::S1ZZ:
      need_n(3);
      if (!(e[2] > 0)) throw InvalidInput("eigenvalues: {1zz} needs im > 0 as the third value");
      return segre_1zz<T>(e[0], e[1], e[2]);
  }
  throw InvalidInput("type: unknown Segre type");
}

std::string product_name(ProductKind k) { return std::string(product_kind_name(k)); }

}  // namespace

json scalar_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

json scalar_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

json scalar_json(const RealRoot& r) { return r.is_exact() ? scalar_json(r.exact_value()) : json(r.approx()); }

AnyScalars scalars_from_json(const json& j, const std::string& field) { return collect(flat_list(j, field)); }

AnyScalars scalars_from_text(const std::string& csv, const std::string& field) {
  std::vector<AnyScalar> xs;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string item = csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    xs.push_back(scalar_from(json(item), field));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return collect(xs);
}

template <Scalar T>
json mat_json(const Mat3<T>& m) {
  json out = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int j = 0; j < 3; ++j) row.push_back(scalar_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

template <Scalar T>
json poly_json(const Poly<T>& p) {
  json out = json::array();
  for (int i = 0; i <= p.degree(); ++i) out.push_back(scalar_json(p.coeff(i)));
  return out;
}

template <Scalar T>
json segre_json(const SegreData<T>& d) {
  json j;
  j["type"] = std::string(segre_type_name(d.type));
  json ev = json::array();
  if (d.type == SegreType::S1ZZ) {
    ev.push_back(scalar_json(d.eigenvalues[0]));
    ev.push_back(d.pair_re);
    ev.push_back(d.pair_im);
  } else {
    for (const auto& e : d.eigenvalues) ev.push_back(scalar_json(e));
  }
  j["eigenvalues"] = ev;
  if (d.type == SegreType::S21 || d.type == SegreType::S3) j["jordan_eigenvalue"] = scalar_json(d.jordan_eigenvalue());
  else j["jordan_eigenvalue"] = nullptr;
  j["char_poly"] = poly_json(d.char_poly);
  j["tau"] = d.tau ? json(*d.tau) : json(nullptr);
  j["backend"] = std::is_same_v<T, Rational> ? "exact" : "approx";
  return j;
}

AnySegre segre_from_json(const json& j) {
  const json& t = need(j, "type", "segre");
  if (!t.is_string()) throw InvalidInput("type: expected a string");
  const auto type = segre_type_from_name(t.get<std::string>());
  if (!type) throw InvalidInput("type: unknown Segre type '" + t.get<std::string>() + "'");

  const bool has_poly = j.contains("char_poly") && !j.at("char_poly").is_null();
  if (has_poly) {
    const AnyScalars cs = scalars_from_json(j.at("char_poly"), "char_poly");
    if (const auto* q = std::get_if<std::vector<Rational>>(&cs)) {
      if (q->size() != 4 || sgn(q->back()) == 0) throw InvalidInput("char_poly: expected 4 coefficients, cubic");
      try {
        return segre_from_char_poly(*type, Poly<Rational>(*q).monic());
      } catch (const std::invalid_argument& e) {
        throw InvalidInput(std::string("char_poly: ") + e.what());
      }
    }
  }
  if (!j.contains("eigenvalues")) throw InvalidInput("eigenvalues: missing (and no exact char_poly)");
  const AnyScalars ev = scalars_from_json(j.at("eigenvalues"), "eigenvalues");
  try {
    if (const auto* q = std::get_if<std::vector<Rational>>(&ev)) return segre_from_values<Rational>(*type, *q);
    SegreData<double> d = segre_from_values<double>(*type, std::get<std::vector<double>>(ev));
    if (j.contains("tau") && j.at("tau").is_number()) d.tau = j.at("tau").get<double>();
    return d;
  } catch (const InvalidInput&) {
    throw;
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("eigenvalues: ") + e.what());
  }
}

template <Scalar T>
json params_json(const FamilyParams<T>& p) {
  json vals = json::array();
  for (const auto& v : p.values) vals.push_back(scalar_json(v));
  return {{"family", std::string(family_name(p.family))}, {"params", vals}};
}

template <Scalar T>
json spec_json(const SymmetricSpaceSpec<T>& s) {
  if (const auto* f = std::get_if<SpaceForm<T>>(&s)) return {{"kind", "space_form"}, {"c", scalar_json(f->c)}};
  if (const auto* p = std::get_if<Product<T>>(&s))
    return {{"kind", "product"}, {"product", product_name(p->kind)}, {"c", scalar_json(p->c)}};
  const auto& w = std::get<PlaneWaveLike<T>>(s);
  return {{"kind", "plane_wave"},
          {"epsilon", w.epsilon},
          {"alpha", scalar_json(w.alpha)},
          {"beta", poly_json(w.beta)},
          {"xi", poly_json(w.xi)}};
}

AnySpec spec_from_json(const json& j) {
  const json& k = need(j, "kind", "spec");
  if (!k.is_string()) throw InvalidInput("kind: expected a string");
  const std::string kind = k.get<std::string>();

  auto make = [&](auto tag) -> AnySpec {
    using T = decltype(tag);
    auto get = [&](const char* key) -> T {
      const AnyScalars v = scalars_from_json(json::array({need(j, key, "spec")}), key);
      if constexpr (std::is_same_v<T, Rational>) return std::get<std::vector<Rational>>(v)[0];
      else return v.index() == 0 ? std::get<0>(v)[0].get_d() : std::get<1>(v)[0];
    };
    auto poly = [&](const char* key) -> Poly<T> {
      if (!j.contains(key)) return {};
      const AnyScalars v = scalars_from_json(j.at(key), key);
      if constexpr (std::is_same_v<T, Rational>) return Poly<Rational>(std::get<std::vector<Rational>>(v));
      else {
        std::vector<double> d;
        if (v.index() == 0)
          for (const auto& q : std::get<0>(v)) d.push_back(q.get_d());
        else d = std::get<1>(v);
        return Poly<double>(d);
      }
    };
    SymmetricSpaceSpec<T> s;
    if (kind == "space_form") {
      s = SpaceForm<T>{get("c")};
    } else if (kind == "product") {
      const json& pn = need(j, "product", "spec");
      const auto pk = pn.is_string() ? product_kind_from_name(pn.get<std::string>()) : std::nullopt;
      if (!pk) throw InvalidInput("product: unknown product kind");
      s = Product<T>{*pk, get("c")};
    } else if (kind == "plane_wave") {
      const json& e = need(j, "epsilon", "spec");
      if (!e.is_number_integer()) throw InvalidInput("epsilon: expected +1 or -1");
      s = PlaneWaveLike<T>{e.get<int>(), get("alpha"), poly("beta"), poly("xi")};
    } else {
      throw InvalidInput("kind: expected space_form, product or plane_wave");
    }
    try {
      if constexpr (std::is_same_v<T, Rational>) validate_spec(s, Field<Rational>{});
      else validate_spec(s, Field<double>{Tolerance{tau_from_env()}});
    } catch (const std::invalid_argument& ex) {
      throw InvalidInput(std::string("spec: ") + ex.what());
    }
    return s;
  };

  // Any float anywhere in the payload forces the approx backend.
  bool approx = false;
  for (const char* key : {"c", "alpha"})
    if (j.contains(key) && scalar_from(j.at(key), key).index() == 1) approx = true;
  for (const char* key : {"beta", "xi"})
    if (j.contains(key) && scalars_from_json(j.at(key), key).index() == 1) approx = true;
  return approx ? make(0.0) : make(Rational(0));
}

template <Scalar T>
json algebra_json(const MetricLieAlgebra<T>& a) {
  json br = json::array();
  for (int i = 0; i < 3; ++i)
    for (int jj = i + 1; jj < 3; ++jj) {
      json v = json::array();
      for (int k = 0; k < 3; ++k) v.push_back(scalar_json(a.sc(i, jj)[k]));
      br.push_back({i + 1, jj + 1, v});
    }
  json out = {{"brackets", br}, {"gram", mat_json(a.gram)}};
  if (a.params) {
    const json p = params_json(*a.params);
    out["family"] = p["family"];
    out["params"] = p["params"];
  }
  return out;
}

AnyAlgebra algebra_from_json(const json& j) {
  if (j.contains("family")) {
    const json& fn = j.at("family");
    const auto f = fn.is_string() ? family_from_name(fn.get<std::string>()) : std::nullopt;
    if (!f) throw InvalidInput("family: unknown family");
    const AnyScalars v = scalars_from_json(need(j, "params", "algebra"), "params");
    try {
      if (const auto* q = std::get_if<std::vector<Rational>>(&v)) return build(FamilyParams<Rational>{*f, *q});
      return build(FamilyParams<double>{*f, std::get<std::vector<double>>(v)},
                   Field<double>{Tolerance{tau_from_env()}});
    } catch (const std::invalid_argument& e) {
      throw InvalidInput(std::string("params: ") + e.what());
    }
  }
  const json& br = need(j, "brackets", "algebra");
  if (!br.is_array()) throw InvalidInput("brackets: expected an array");
  std::vector<AnyScalar> all = flat_matrix(need(j, "gram", "algebra"), "gram");
  struct Entry {
    int i, j;
    std::size_t at;
  };
  std::vector<Entry> entries;
  for (const auto& e : br) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw InvalidInput("brackets: entries are [i, j, [c1, c2, c3]]");
    const int i = e[0].get<int>() - 1, jj = e[1].get<int>() - 1;
    if (i < 0 || i > 2 || jj < 0 || jj > 2 || i == jj) throw InvalidInput("brackets: indices must be distinct in 1..3");
    const auto v = flat_list(e[2], "brackets");
    if (v.size() != 3) throw InvalidInput("brackets: each value has 3 components");
    entries.push_back({i, jj, all.size()});
    all.insert(all.end(), v.begin(), v.end());
  }
  const AnyScalars xs = collect(all);
  auto make = [&](const auto& vals) -> AnyAlgebra {
    using T = typename std::decay_t<decltype(vals)>::value_type;
    const Mat3<T> gram = mat_from<T>({vals.begin(), vals.begin() + 9}, "gram");
    StructureConstants<T> sc;
    for (const auto& e : entries) sc.set(e.i, e.j, Vec3<T>{vals[e.at], vals[e.at + 1], vals[e.at + 2]});
    try {
      if constexpr (std::is_same_v<T, Rational>) return make_free_algebra(sc, gram);
      else return make_free_algebra(sc, gram, Field<double>{Tolerance{tau_from_env()}});
    } catch (const std::invalid_argument& e) {
      throw InvalidInput(std::string("algebra: ") + e.what());
    } catch (const std::domain_error& e) {
      throw InvalidInput(std::string("gram: ") + e.what());
    }
  };
  return std::visit(make, xs);
}

json verdict_json(const Verdict& v) {
  json w = nullptr;
  if (v.witness) {
    w = std::visit(
        [](const auto& x) -> json {
          using X = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<X, FamilyParams<Rational>>) return params_json(x);
          else if constexpr (std::is_same_v<X, FamilyParams<double>>) return params_json(x);
          else return spec_json(x);
        },
        *v.witness);
  }
  return {{"admissible", v.admissible},
          {"conditions", v.conditions},
          {"witness", w},
          {"residual", v.residual ? json(*v.residual) : json(nullptr)}};
}

SweepConfig sweep_config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("config: expected a JSON object");
  SweepConfig c;
  try {
    if (j.contains("family")) c.family = j.at("family").get<std::string>();
    if (j.contains("mode")) c.mode = j.at("mode").get<std::string>();
    if (j.contains("samples")) c.samples = j.at("samples").get<long>();
    if (j.contains("step")) c.step = j.at("step").is_string() ? j.at("step").get<std::string>() : j.at("step").dump();
    if (j.contains("max_denominator")) c.max_denominator = j.at("max_denominator").get<long>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tau")) c.tau = j.at("tau").get<double>();
    else c.tau = tau_from_env();
    if (j.contains("crosscheck")) c.crosscheck = j.at("crosscheck").get<double>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    if (j.contains("format")) c.format = j.at("format").get<std::string>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config: ") + e.what());
  }
  if (j.contains("backend")) {
    const json& b = j.at("backend");
    if (b == "exact") c.backend = Backend::exact;
    else if (b == "approx") c.backend = Backend::approx;
    else throw InvalidInput("backend: expected exact or approx");
  }
  if (j.contains("ranges")) {
    const json& r = j.at("ranges");
    if (!r.is_object()) throw InvalidInput("ranges: expected an object of [lo, hi] pairs");
    for (const auto& [name, v] : r.items()) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw InvalidInput("ranges." + name + ": expected [lo, hi]");
      c.ranges[name] = ParamRange{v[0].get<double>(), v[1].get<double>()};
    }
  }
  if (c.format != "csv" && c.format != "json" && c.format != "both")
    throw InvalidInput("format: expected csv, json or both");
  if (c.mode != "random" && c.mode != "grid") throw InvalidInput("mode: expected random or grid");
  return c;
}

json summary_json(const RegionSummary& s) {
  json ft = json::array();
  for (const auto& [key, n] : s.by_family_type) ft.push_back({{"family", key.first}, {"segre_type", key.second}, {"count", n}});
  json cond = json::object();
  for (const auto& [c, n] : s.by_condition) cond[c] = n;
  json flags = json::object();
  for (const auto& [f, n] : s.by_flag) flags[f] = n;
  return {{"by_family_type", ft}, {"by_condition", cond}, {"by_flag", flags}};
}

json report_to_json(const SweepReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json params = json::array();
    for (std::size_t i = 0; i < 4; ++i) params.push_back(i < row.params.size() ? row.params[i] : "");
    rows.push_back({{"family", row.family},
                    {"params", params},
                    {"segre_type", row.segre_type},
                    {"k", row.k},
                    {"conditions", row.conditions},
                    {"backend", std::string(backend_name(row.backend))},
                    {"flag", row.flag}});
  }
  return {{"requested", r.requested},
          {"rejected", r.rejected},
          {"flagged", r.flagged()},
          {"rows", rows},
          {"summary", summary_json(region_summary(r))}};
}

#define LORENTZ3_INSTANTIATE(T)                                    \
  template json mat_json(const Mat3<T>&);                          \
  template json poly_json(const Poly<T>&);                         \
  template json segre_json(const SegreData<T>&);                   \
  template json params_json(const FamilyParams<T>&);               \
  template json spec_json(const SymmetricSpaceSpec<T>&);           \
  template json algebra_json(const MetricLieAlgebra<T>&);

LORENTZ3_INSTANTIATE(Rational)
LORENTZ3_INSTANTIATE(double)

#undef LORENTZ3_INSTANTIATE

}  // namespace lorentz3
