#include "lorentz3/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "lorentz3/curvature.hpp"
#include "lorentz3/json_io.hpp"

namespace lorentz3 {

namespace {

struct Exit {
  int code;
};

Field<double> approx_field() { return Field<double>{Tolerance{tau_from_env()}}; }

json parse_json_arg(const std::string& text, const std::string& field) {
  std::string body = text;
  const auto first = text.find_first_not_of(" \t\n");
  if (first == std::string::npos) throw InvalidInput(field + ": empty");
  if (text[first] != '{' && text[first] != '[') {
    std::ifstream in(text);
    if (!in) throw InvalidInput(field + ": cannot read file '" + text + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw InvalidInput(field + ": invalid JSON: " + e.what());
  }
}

template <Scalar T>
json operator_json(const CurvatureOperator<T>& op, const Field<T>& field) {
  json j;
  j["K"] = mat_json(op.K);
  j["gram2"] = mat_json(op.gram2);
  j["segre"] = segre_json(classify(op.K, field));
  return j;
}

std::vector<double> as_doubles(const AnyScalars& v) {
  if (const auto* d = std::get_if<std::vector<double>>(&v)) return *d;
  std::vector<double> out;
  for (const auto& q : std::get<std::vector<Rational>>(v)) out.push_back(q.get_d());
  return out;
}

Backend pick_backend(const std::string& requested, const AnyScalars& v) {
  const bool floats = v.index() == 1;
  if (requested == "exact") {
    if (floats) throw InvalidInput("params: floats need --backend approx (or n/d rationals)");
    return Backend::exact;
  }
  if (requested == "approx") return Backend::approx;
  return floats ? Backend::approx : Backend::exact;
}

int cmd_classify(const std::string& family, const std::string& params, const std::string& backend, std::ostream& out) {
  const auto f = family_from_name(family);
  if (!f) throw InvalidInput("family: unknown family '" + family + "'");
  const AnyScalars v = scalars_from_text(params, "params");
  const Backend b = pick_backend(backend, v);
  json j;
  auto fill = [&](const auto& fp, const auto& field) {
    try {
      const auto alg = build(fp, field);
      j = operator_json(curvature_operator(alg, field), field);
      j["algebra"] = algebra_json(alg);
      if (is_unimodular(*f)) j["lie_type"] = std::string(lie_type_name(unimodular_type(fp, field)));
    } catch (const std::invalid_argument& e) {
      throw InvalidInput(std::string("params: ") + e.what());
    } catch (const DegenerateMetric& e) {
      throw InvalidInput(std::string("params: ") + e.what());
    }
  };
  if (b == Backend::exact) fill(FamilyParams<Rational>{*f, std::get<std::vector<Rational>>(v)}, Field<Rational>{});
  else fill(FamilyParams<double>{*f, as_doubles(v)}, approx_field());
  j["family"] = std::string(family_name(*f));
  j["backend"] = std::string(backend_name(b));
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_symmetric(const std::string& spec_text, const std::string& point, std::ostream& out) {
  const AnySpec spec = spec_from_json(parse_json_arg(spec_text, "spec"));
  json j;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(std::get<0>(s).c)>;
        const Field<T> field = [] {
          if constexpr (std::is_same_v<T, Rational>) return Field<Rational>{};
          else return approx_field();
        }();
        j = operator_json(symmetric_operator(s, field), field);
        j["spec"] = spec_json(s);
        j["kind"] = spec_kind_name(s, field);
        j["backend"] = std::is_same_v<T, Rational> ? "exact" : "approx";
        if (!point.empty()) {
          const auto* w = std::get_if<PlaneWaveLike<T>>(&s);
          if (!w) throw InvalidInput("point: only plane_wave specs have a coordinate model");
          const AnyScalars pv = scalars_from_text(point, "point");
          CoordinatePoint<T> p;
          if constexpr (std::is_same_v<T, Rational>) {
            if (pv.index() != 0) throw InvalidInput("point: use rationals for an exact spec");
            const auto& q = std::get<0>(pv);
            if (q.size() != 3) throw InvalidInput("point: expected 3 coordinates");
            p = {q[0], q[1], q[2]};
          } else {
            const auto d = as_doubles(pv);
            if (d.size() != 3) throw InvalidInput("point: expected 3 coordinates");
            p = {d[0], d[1], d[2]};
          }
          const auto op = coordinate_curvature_operator(*w, p, field);
          json c = operator_json(op, field);
          const auto ref = symmetric_operator(s, field);
          bool same = true;
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) same = same && field.equal(op.K(a, b), ref.K(a, b));
          c["matches_symmetric_operator"] = same;
          j["coordinate"] = c;
        }
      },
      spec);
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_admissible(const std::string& segre_text, std::ostream& out) {
  const AnySegre d = segre_from_json(parse_json_arg(segre_text, "segre"));
  Verdict v;
  json sj;
  if (const auto* q = std::get_if<SegreData<Rational>>(&d)) {
    v = admissible(*q);
    sj = segre_json(*q);
  } else {
    const auto& a = std::get<SegreData<double>>(d);
    v = admissible(a, approx_field());
    sj = segre_json(a);
  }
  json j = verdict_json(v);
  j["segre"] = sj;
  out << j.dump(2) << "\n";
  return v.admissible ? kExitOk : kExitNegative;
}

int cmd_reconstruct(const std::string& k1, const std::string& k2, std::ostream& out) {
  const AnyScalars v = scalars_from_text(k1 + "," + k2, "k1/k2");
  A2Reconstruction r;
  try {
    if (const auto* q = std::get_if<std::vector<Rational>>(&v)) r = reconstruct_A2((*q)[0], (*q)[1]);
    else r = reconstruct_A2(std::get<1>(v)[0], std::get<1>(v)[1]);
  } catch (const OutOfRange& e) {
    throw InvalidInput(std::string("k2: ") + e.what());
  }
  json branches = json::array();
  for (const auto& p : r.exact)
    branches.push_back({{"lambda1", scalar_json(p[0])}, {"lambda2", scalar_json(p[1])}, {"backend", "exact"}});
  for (const auto& p : r.approx)
    branches.push_back({{"lambda1", p[0]}, {"lambda2", p[1]}, {"backend", "approx"}});
  out << json{{"branches", branches}, {"lambda2_free", r.lambda2_free}}.dump(2) << "\n";
  return kExitOk;
}

int cmd_realize(const std::string& segre_text, const RealizeOptions& opts, std::ostream& out) {
  const AnySegre d = segre_from_json(parse_json_arg(segre_text, "segre"));
  if (!opts.family.empty() && opts.family != "symmetric" && !family_from_name(opts.family))
    throw InvalidInput("family: unknown family '" + opts.family + "'");
  try {
    const Verdict v = std::visit([&](const auto& x) { return realize(x, opts); }, d);
    out << verdict_json(v).dump(2) << "\n";
    return kExitOk;
  } catch (const NotAdmissible& e) {
    out << json{{"admissible", false}, {"conditions", json::array()}, {"witness", nullptr}, {"residual", nullptr},
                {"message", e.what()}}
               .dump(2)
        << "\n";
    return kExitNegative;
  } catch (const SearchFailed& e) {
    out << json{{"admissible", true},
                {"inconclusive", true},
                {"best_residual", std::isfinite(e.best_residual) ? json(e.best_residual) : json(nullptr)},
                {"message", e.what()}}
               .dump(2)
        << "\n";
    return kExitNegative;
  }
}

int cmd_sweep(const std::string& config_text, std::ostream& out) {
  const SweepConfig cfg = sweep_config_from_json(parse_json_arg(config_text, "config"));
  SweepReport r;
  try {
    r = run_sweep(cfg);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  write_report(r, cfg);
  json j = {{"requested", r.requested},
            {"rejected", r.rejected},
            {"rows", r.rows.size()},
            {"flagged", r.flagged()},
            {"summary", summary_json(region_summary(r))}};
  if (!cfg.output.empty()) j["output"] = cfg.output;
  out << j.dump(2) << "\n";
  return r.flagged() > 0 ? kExitDiscrepancy : kExitOk;
}

int cmd_table(const std::string& signs, const std::string& family, const std::string& params, std::ostream& out) {
  json j;
  if (!signs.empty()) {
    std::array<int, 3> s{};
    std::size_t n = 0, start = 0;
    while (true) {
      const auto comma = signs.find(',', start);
      std::string tok = signs.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      tok.erase(0, tok.find_first_not_of(' '));
      tok.erase(tok.find_last_not_of(' ') + 1);
      if (n == 3) throw InvalidInput("signs: expected three entries");
      if (tok == "+" || tok == "+1" || tok == "1") s[n++] = 1;
      else if (tok == "-" || tok == "-1") s[n++] = -1;
      else if (tok == "0") s[n++] = 0;
      else throw InvalidInput("signs: entries are +, - or 0, got '" + tok + "'");
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (n != 3) throw InvalidInput("signs: expected three entries");
    j = {{"signs", signs}, {"lie_type", std::string(lie_type_name(lie_type_from_signs(s)))}};
  } else {
    const auto f = family_from_name(family);
    if (!f) throw InvalidInput("family: unknown family '" + family + "'");
    const AnyScalars v = scalars_from_text(params, "params");
    try {
      const LieType t = v.index() == 0 ? unimodular_type(FamilyParams<Rational>{*f, std::get<0>(v)})
                                       : unimodular_type(FamilyParams<double>{*f, std::get<1>(v)}, approx_field());
      j = {{"family", std::string(family_name(*f))}, {"lie_type", std::string(lie_type_name(t))}};
    } catch (const std::invalid_argument& e) {
      throw InvalidInput(std::string("family: ") + e.what());
    }
  }
  out << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sectional curvature operators of 3D Lorentzian Lie groups and symmetric spaces"};
  app.require_subcommand(1, 1);

  std::string family, params, backend = "auto", spec, point, segre, k1, k2, config, signs;
  RealizeOptions ro;

  auto* c_classify = app.add_subcommand("classify", "Operator and Segre data of a family member");
  c_classify->add_option("--family", family, "A1 A2 A3 A4 NA NB C1 C2")->required();
  c_classify->add_option("--params", params, "comma separated, n/d or decimals")->required();
  c_classify->add_option("--backend", backend, "exact, approx or auto")->check(CLI::IsMember({"exact", "approx", "auto"}));

  auto* c_sym = app.add_subcommand("symmetric", "Operator of a locally symmetric space");
  c_sym->add_option("--spec", spec, "JSON file or inline JSON")->required();
  c_sym->add_option("--point", point, "u1,u2,u3 for the coordinate computation (plane wave)");

  auto* c_adm = app.add_subcommand("admissible", "Check prescribed Segre data");
  c_adm->add_option("--segre", segre, "JSON file or inline JSON")->required();

  auto* c_rec = app.add_subcommand("reconstruct", "A2 parameters for {21} data");
  c_rec->add_option("--k1", k1, "simple eigenvalue")->required();
  c_rec->add_option("--k2", k2, "Jordan eigenvalue")->required();

  auto* c_real = app.add_subcommand("realize", "Search for a witness");
  c_real->add_option("--segre", segre, "JSON file or inline JSON")->required();
  c_real->add_option("--family", ro.family, "restrict to one family or 'symmetric'");
  c_real->add_option("--seed", ro.seed);
  c_real->add_option("--starts", ro.starts)->check(CLI::PositiveNumber);
  c_real->add_option("--threads", ro.threads)->check(CLI::PositiveNumber);
  c_real->add_option("--max-evals", ro.max_evals)->check(CLI::PositiveNumber);

  auto* c_sweep = app.add_subcommand("sweep", "Parameter sweep report");
  c_sweep->add_option("--config", config, "JSON file or inline JSON")->required();

  auto* c_table = app.add_subcommand("table", "Unimodular Lie algebra type");
  auto* o_signs = c_table->add_option("--signs", signs, "e.g. \"+,-,0\"");
  auto* o_fam = c_table->add_option("--family", family);
  c_table->add_option("--params", params)->needs(o_fam);
  o_signs->excludes(o_fam);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (*c_classify) return cmd_classify(family, params, backend, out);
    if (*c_sym) return cmd_symmetric(spec, point, out);
    if (*c_adm) return cmd_admissible(segre, out);
    if (*c_rec) return cmd_reconstruct(k1, k2, out);
    if (*c_real) {
      ro.tau = tau_from_env();
      return cmd_realize(segre, ro, out);
    }
    if (*c_sweep) return cmd_sweep(config, out);
    if (*c_table) {
      if (signs.empty() && (family.empty() || params.empty()))
        throw InvalidInput("table: give --signs or --family with --params");
      return cmd_table(signs, family, params, out);
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitDiscrepancy;
  }
  return kExitInvalid;
}

}  // namespace lorentz3
