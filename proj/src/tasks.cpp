#include "siegel/tasks.hpp"

#include "siegel/adelic.hpp"
#include "siegel/cube_count.hpp"

#include <algorithm>
#include <random>

namespace siegel::io {

Json RunConfig::to_json() const {
  return {{"precisionBits", precision_bits}, {"budget", budget}, {"threads", threads}, {"pointsCap", points_cap},
          {"seed", seed}};
}

SearchOptions RunConfig::search_options() const {
  SearchOptions o;
  o.bounds.frac_bits = precision_bits;
  o.limits.node_budget = budget;
  o.limits.threads = threads;
  return o;
}

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = {"height", "subspace-height", "count-box",       "count-adelic",
                                                 "scan-f", "bounds",          "search",          "extend",
                                                 "nonvanish-forms", "nonvanish-poly", "probe"};
  return names;
}

namespace {

const Json& param(const ProblemFile& p, const char* key) {
  auto it = p.params.find(key);
  if (it == p.params.end()) throw MalformedInput(std::string("task ") + p.task + " needs \"" + key + "\"");
  return *it;
}

Subspace need_W(const ProblemFile& p) {
  if (!p.W) throw MalformedInput("task " + p.task + " needs W");
  return p.W->build(p.field);
}

std::vector<Subspace> build_Vs(const ProblemFile& p) {
  std::vector<Subspace> out;
  for (const auto& v : p.Vs) out.push_back(v.build(p.field));
  return out;
}

Json height_json(const HeightValue& h) { return {{"sq", rational_json(h.sq)}, {"approx", h.approx()}}; }

Json lower_json(const Rat& x) {
  return {{"value", rational_json(x)}, {"decimal", decimal_down(x)}, {"roundedDown", true}};
}

Json upper_json(const Rat& x) { return {{"value", rational_json(x)}, {"decimal", decimal_up(x)}, {"roundedUp", true}}; }

Json int_json(const Int& x) { return x.get_str(); }

int as_int(std::size_t n) { return static_cast<int>(n); }

Json points_json(const std::vector<OVector>& pts, const FieldDescriptor& f, std::size_t cap, Json& out) {
  Json list = Json::array();
  for (std::size_t i = 0; i < pts.size() && i < cap; ++i) list.push_back(vector_json(pts[i], f));
  out["truncated"] = pts.size() > cap;
  return list;
}

Json task_height(const ProblemFile& p) {
  require_exact(p.field);
  KVector x = vector_from(param(p, "x"), p.field);
  return {{"canonical", vector_json(canonical_integral(x, p.field), p.field)},
          {"H", height_json(height_H(x, p.field))},
          {"Hcal", height_json(height_Hcal(x, p.field))}};
}

Json task_subspace_height(const ProblemFile& p) {
  Subspace W = need_W(p);
  Json gr = Json::array();
  for (const auto& c : W.grassmann().coords) gr.push_back(scalar_json(GaussRat(c), p.field));
  std::vector<KVector> basis;
  for (const auto& b : W.basis_vectors()) basis.push_back(to_kvector(b));
  return {{"dim", W.dim()},
          {"ambient", W.ambient()},
          {"height", height_json(W.height())},
          {"basis", matrix_json(basis, p.field)},
          {"grassmann", gr}};
}

Json task_count_box(const ProblemFile& p, const RunConfig& cfg) {
  auto rows = matrix_from(param(p, "basis"), FieldDescriptor::rationals());
  if (rows.empty()) throw MalformedInput("basis must not be empty");
  RatMatrix a(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(i, j) = rows[i][j].re;
  std::optional<Rat> c;
  if (p.params.contains("c")) c = rational_from(p.params["c"]);
  UTBasis basis = UTBasis::from_matrix(a, c);
  CubeSpec cube{rational_from(param(p, "R")), {}};
  if (cube.R <= 0) throw std::invalid_argument("R must be positive");
  if (p.params.contains("z"))
    for (const auto& zi : vector_from(p.params["z"], FieldDescriptor::rationals())) cube.z.push_back(zi.re);
  EnumOptions opts;
  opts.points_cap = cfg.points_cap;
  opts.threads = cfg.threads;
  BoxEnumeration e = enumerate_box(basis, cube, opts);

  Json pts = Json::array();
  for (const auto& pt : e.points(basis)) {
    KVector v;
    for (const auto& x : pt) v.emplace_back(x);
    pts.push_back(vector_json(v, FieldDescriptor::rationals()));
  }
  CountBounds box = box_count_bounds(basis, cube.R);
  Lemma21Bounds lem = lemma21_bounds(basis.det(), basis.c, basis.n(), cube.R);
  Json out = {{"count", int_json(e.count)},
              {"det", rational_json(basis.det())},
              {"c", rational_json(basis.c)},
              {"boxBounds", {{"lower", int_json(box.lower)}, {"upper", int_json(box.upper)}}},
              {"lemmaBounds", {{"upper", rational_json(lem.upper)}}},
              {"points", pts},
              {"truncated", e.truncated}};
  out["lemmaBounds"]["lower"] = lem.lower ? Json(rational_json(*lem.lower)) : Json(nullptr);
  return out;
}

Rat radius_sq(const ProblemFile& p) {
  if (p.params.contains("RSq")) return rational_from(p.params["RSq"]);
  Rat R = rational_from(param(p, "R"));
  return R * R;
}

Json task_count_adelic(const ProblemFile& p, const RunConfig& cfg) {
  Subspace W = need_W(p);
  const Rat R_sq = radius_sq(p);
  AdelicCount c = count_S_R(W, R_sq, cfg.search_options().limits, {cfg.precision_bits});
  Json out = {{"RSq", rational_json(R_sq)},
              {"count", int_json(c.count)},
              {"lower", lower_json(c.lower)},
              {"upper", upper_json(c.upper)}};
  out["points"] = points_json(c.points, p.field, cfg.points_cap, out);
  return out;
}

Json task_scan_f(const ProblemFile& p, const RunConfig& cfg) {
  Subspace W = need_W(p);
  auto Vs = build_Vs(p);
  const EnumerationLimits limits = cfg.search_options().limits;
  Int top = p.params.contains("RSqMax") ? floor_of(rational_from(p.params["RSqMax"]))
                                        : Int(floor_of(minimal_positive_R(W, Vs, std::nullopt, limits).R_sq));
  if (top < 1) throw std::invalid_argument("RSqMax must be at least 1");
  const bool qi = p.field.kind == FieldKind::QI;
  Json table = Json::array();
  for (Int r = 1;; ++r) {
    const Int level = qi ? r : Int(r * r);
    if (level > top) break;
    if (table.size() >= 4096) throw InstanceTooLarge();
    auto pts = enumerate_S_R(W, Rat(level), limits);
    Int f = counting_function_f(W, Vs, Rat(level), limits);
    const Int total = static_cast<unsigned long>(pts.size());
    table.push_back(
        {{"RSq", int_json(level)}, {"count", int_json(total)}, {"union", int_json(total - f)}, {"f", int_json(f)}});
  }
  return {{"table", table}};
}

Json params_json(const BoundParams& b) {
  Json vs = Json::array();
  for (const auto& v : b.vs) vs.push_back({{"dim", v.dim}, {"heightSq", rational_json(v.height_sq)}});
  return {{"N", b.N}, {"w", b.w}, {"s", b.s}, {"heightSqW", rational_json(b.height_sq_W)}, {"vs", vs}};
}

BoundParams params_from(const Json& j, const FieldDescriptor& f) {
  BoundParams b;
  try {
    b.field = f;
    b.N = j.at("N").get<int>();
    b.w = j.at("w").get<int>();
    b.s = j.at("s").get<int>();
    b.height_sq_W = rational_from(j.at("heightSqW"));
    for (const auto& v : j.at("vs")) b.vs.push_back({v.at("dim").get<int>(), rational_from(v.at("heightSq"))});
  } catch (const Json::exception& e) {
    throw MalformedInput(e.what());
  }
  return b;
}

Json task_bounds(const ProblemFile& p, const RunConfig& cfg) {
  BoundParams b;
  if (p.params.contains("params")) {
    b = params_from(p.params["params"], p.field);
  } else {
    b = resolve_instance({need_W(p), build_Vs(p), p.s}).params;
  }
  b.validate();
  const BoundOptions o{cfg.precision_bits};
  TheoremRadii radii = theorem31_R1_R2(b, o);
  Json out = {{"params", params_json(b)},
              {"siegel", bound_json(siegel_bound(b.field, b.N, b.w, b.height_sq_W, o))},
              {"mainConstant", bound_json(main_constant(b.field, b.N, b.w, b.s, o))},
              {"main", bound_json(main_bound(b, o))},
              {"R1", bound_json(radii.R1)},
              {"R2", bound_json(radii.R2)},
              {"maxR", radii.max().formula},
              {"n11", bound_json(inverse_siegel_bound(b.field, b.N, b.M(), o))}};
  if (b.field.d == 1 && b.s == b.w - 1) {
    std::vector<Rat> hv;
    for (const auto& v : b.vs) hv.push_back(v.height_sq);
    out["n10"] = bound_json(rational_case_bound(b.N, b.w, b.l(), b.height_sq_W, hv, o));
  }
  if (b.M() == 1 && b.vs.front().dim == b.w - 1)
    out["extend"] = bound_json(extension_bound(b.field, b.N, b.w, b.height_sq_W, b.vs.front().height_sq, o));
  return out;
}

Json task_search(const ProblemFile& p, const RunConfig& cfg) {
  Instance inst{need_W(p), build_Vs(p), p.s};
  return {{"certificate", certificate_json(find_avoiding_point(inst, cfg.search_options()))}};
}

Json task_extend(const ProblemFile& p, const RunConfig& cfg) {
  if (p.Vs.size() != 1) throw MalformedInput("extend needs exactly one subspace in Vs");
  ExtensionResult e = extend_subspace(need_W(p), p.Vs.front().build(p.field), cfg.search_options());
  return {{"x", vector_json(e.x, p.field)},
          {"heightSq", rational_json(e.height_sq)},
          {"bound", bound_json(e.bound)},
          {"certificate", certificate_json(e.cert)}};
}

Json task_forms(const ProblemFile& p, const RunConfig& cfg) {
  auto forms = matrix_from(param(p, "forms"), p.field);
  if (forms.empty()) throw MalformedInput("forms must not be empty");
  FormsResult r = nonvanishing_point_forms(p.field, forms.front().size(), forms, cfg.search_options());
  Json values = Json::array();
  for (const auto& L : forms) values.push_back(scalar_json(evaluate_form(L, r.x), p.field));
  return {{"x", vector_json(r.x, p.field)},
          {"heightSq", rational_json(r.height_sq)},
          {"bound", bound_json(r.bound)},
          {"formValues", values},
          {"certificate", certificate_json(r.cert)}};
}

Json poly_json(const Polynomial& F) {
  Json terms = Json::array();
  for (const auto& [e, c] : F.terms()) terms.push_back({{"exponents", e}, {"coeff", rational_json(c)}});
  return {{"nvars", F.nvars()}, {"terms", terms}};
}

Polynomial poly_from(const Json& j) {
  try {
    Polynomial F(j.at("nvars").get<std::size_t>());
    for (const auto& t : j.at("terms")) F.add_term(t.at("exponents").get<std::vector<unsigned>>(), rational_from(t.at("coeff")));
    return F;
  } catch (const Json::exception& e) {
    throw MalformedInput(e.what());
  }
}

Json task_poly(const ProblemFile& p) {
  Json out;
  Polynomial F(0);
  if (p.params.contains("vanishingWitness")) {
    const Json& w = p.params["vanishingWitness"];
    std::vector<Int> alphas;
    try {
      for (const auto& a : w.at("alphas")) alphas.push_back(rational_from(a).get_num());
      F = vanishing_witness(w.at("M").get<std::size_t>(), w.at("N").get<std::size_t>(), alphas);
    } catch (const Json::exception& e) {
      throw MalformedInput(e.what());
    }
    out["vanishesOnGrid"] = true;
  } else {
    F = poly_from(param(p, "polynomial"));
  }
  std::vector<Int> x = nonvanishing_point_poly(F);
  Json xs = Json::array();
  for (const auto& c : x) xs.push_back(int_json(c));
  out["polynomial"] = poly_json(F);
  out["degree"] = F.degree();
  out["x"] = xs;
  out["value"] = rational_json(F(x));
  return out;
}

Json task_probe(const ProblemFile& p, const RunConfig& cfg) {
  Subspace W = need_W(p);
  ProbeReport r = sharpness_probe(W, cfg.search_options());
  Json minima = Json::array(), vecs = Json::array();
  for (const auto& m : r.minima) minima.push_back(int_json(m));
  for (const auto& v : r.minima_vectors) vecs.push_back(vector_json(v, p.field));
  std::vector<KVector> avoid;
  for (std::size_t k = 0; k + 1 < r.minima_vectors.size(); ++k) avoid.push_back(to_kvector(r.minima_vectors[k]));
  return {{"minima", minima},
          {"minimaVectors", vecs},
          {"avoid", matrix_json(avoid, p.field)},
          {"heightSqW", rational_json(W.height().sq)},
          {"ratio", r.ratio},
          {"minimaProductRatio", r.minima_product_ratio},
          {"certificate", certificate_json(r.cert)}};
}

}  // namespace

Json certificate_json(const Certificate& c) {
  Json vs = Json::array();
  for (const auto& v : c.vs) vs.push_back({{"dim", v.dim}, {"heightSq", rational_json(v.height_sq)}});
  return {{"instance",
           {{"N", c.N}, {"w", c.w}, {"s", c.s}, {"M", c.vs.size()}, {"heightSqW", rational_json(c.height_sq_W)},
            {"vs", vs}}},
          {"bounds",
           {{"siegel", bound_json(c.siegel)},
            {"main", bound_json(c.main)},
            {"R1", bound_json(c.radii.R1)},
            {"R2", bound_json(c.radii.R2)}}},
          {"witness", vector_json(c.witness, c.field)},
          {"witnessHeightSq", rational_json(c.witness_height_sq)},
          {"empiricalMinHeightSq", rational_json(c.empirical_min_height_sq)},
          {"RSq", rational_json(c.R_sq)},
          {"tightnessRatio", c.tightness_ratio},
          {"enumerationStats",
           {{"probes", c.stats.probes},
            {"pointsEnumerated", c.stats.points_enumerated},
            {"avoidingAtR", c.stats.avoiding_at_R}}}};
}

Certificate certificate_from(const Json& j, const FieldDescriptor& field) {
  Certificate c;
  try {
    c.field = field;
    const Json& in = j.at("instance");
    c.N = in.at("N").get<int>();
    c.w = in.at("w").get<int>();
    c.s = in.at("s").get<int>();
    c.height_sq_W = rational_from(in.at("heightSqW"));
    for (const auto& v : in.at("vs")) c.vs.push_back({v.at("dim").get<int>(), rational_from(v.at("heightSq"))});
    const Json& b = j.at("bounds");
    c.siegel = bound_from(b.at("siegel"));
    c.main = bound_from(b.at("main"));
    c.radii = {bound_from(b.at("R1")), bound_from(b.at("R2"))};
    for (const auto& x : vector_from(j.at("witness"), field)) {
      if (x.re.get_den() != 1 || x.im.get_den() != 1) throw MalformedInput("witness must be integral");
      c.witness.emplace_back(x.re.get_num(), x.im.get_num());
    }
    c.witness_height_sq = rational_from(j.at("witnessHeightSq"));
    c.empirical_min_height_sq = rational_from(j.at("empiricalMinHeightSq"));
    c.R_sq = rational_from(j.at("RSq"));
    c.tightness_ratio = j.at("tightnessRatio").get<double>();
  } catch (const Json::exception& e) {
    throw MalformedInput(e.what());
  }
  return c;
}

Json run_task(const std::string& task, const ProblemFile& p, const RunConfig& cfg) {
  if (!p.task.empty() && p.task != task) throw MalformedInput("problem file is for task " + p.task);
  if (task == "height") return task_height(p);
  if (task == "subspace-height") return task_subspace_height(p);
  if (task == "count-box") return task_count_box(p, cfg);
  if (task == "count-adelic") return task_count_adelic(p, cfg);
  if (task == "scan-f") return task_scan_f(p, cfg);
  if (task == "bounds") return task_bounds(p, cfg);
  if (task == "search") return task_search(p, cfg);
  if (task == "extend") return task_extend(p, cfg);
  if (task == "nonvanish-forms") return task_forms(p, cfg);
  if (task == "nonvanish-poly") return task_poly(p);
  if (task == "probe") return task_probe(p, cfg);
  throw MalformedInput("unknown task " + task);
}

ReportFile make_report(const ProblemFile& p, const RunConfig& cfg, Json results, double seconds) {
  ReportFile r;
  r.task = p.task;
  r.input_digest = input_digest(p);
  r.input = serialize_problem(p);
  r.config = cfg.to_json();
  r.results = std::move(results);
  r.timing = {{"seconds", seconds}};
  return r;
}

namespace {

std::vector<KVector> random_rows(std::mt19937_64& rng, const FieldDescriptor& f, std::size_t N, std::size_t k,
                                 long m) {
  const std::uint64_t span = static_cast<std::uint64_t>(2 * m + 1);
  while (true) {
    std::vector<KVector> rows(k, KVector(N));
    for (auto& r : rows)
      for (auto& c : r) {
        const long re = static_cast<long>(rng() % span) - m;
        const long im = f.kind == FieldKind::QI ? static_cast<long>(rng() % span) - m : 0;
        c = GaussRat(Rat(re), Rat(im));
      }
    bool zero = true;
    for (const auto& r : rows)
      for (const auto& c : r) zero = zero && c.is_zero();
    if (!zero && Subspace::from_basis(f, rows).dim() == k) return rows;
  }
}

std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

}  // namespace

std::vector<ProblemFile> gen_corpus(std::uint64_t seed, const CorpusSpec& spec) {
  require_exact(spec.field);
  const std::size_t w_lo = std::max<std::size_t>(2, spec.w_min);
  if (spec.n_min > spec.n_max || spec.n_max < 2) throw std::invalid_argument("empty N range");
  if (w_lo > spec.w_max || w_lo > spec.n_max) throw std::invalid_argument("no admissible w (need 2 <= w <= N)");
  if (spec.magnitude < 1 || spec.max_avoid < 1) throw std::invalid_argument("magnitude and max_avoid must be positive");

  std::mt19937_64 rng(seed);
  std::vector<ProblemFile> out;
  for (std::size_t k = 0; k < spec.count; ++k) {
    const std::size_t N = draw(rng, std::max(spec.n_min, w_lo), spec.n_max);
    const std::size_t w = draw(rng, w_lo, std::min(spec.w_max, N));
    ProblemFile p;
    p.task = "search";
    p.field = spec.field;
    p.W = SubspaceSpec{false, random_rows(rng, spec.field, N, w, spec.magnitude), std::nullopt};
    const std::size_t M = draw(rng, 1, spec.max_avoid);
    for (std::size_t i = 0; i < M; ++i)
      p.Vs.push_back({false, random_rows(rng, spec.field, N, draw(rng, 1, w - 1), spec.magnitude), std::nullopt});

    Subspace W = p.W->build(p.field);
    resolve_instance({W, build_Vs(p), std::nullopt});
    build_lambda(W);
    out.push_back(std::move(p));
  }
  return out;
}

VerifyOutcome verify_report(const ReportFile& r, const RunConfig& cfg) {
  VerifyOutcome v;
  ProblemFile p = parse_problem(r.input);
  const bool digest_ok = input_digest(p) == r.input_digest;
  unsigned bits = cfg.precision_bits;
  if (r.config.contains("precisionBits")) bits = r.config["precisionBits"].get<unsigned>();
  const BoundOptions opts{bits};
  const BoundOptions fine{2 * bits};

  std::optional<Instance> inst;
  bool extra_ok = true;
  Json extra = Json::object();
  const Json* cert_json = nullptr;
  if (r.task == "search") {
    inst = Instance{need_W(p), build_Vs(p), p.s};
    cert_json = &r.results.at("certificate");
  } else if (r.task == "extend") {
    Subspace W = need_W(p);
    if (p.Vs.size() != 1) throw MalformedInput("extend needs exactly one subspace in Vs");
    Subspace V = p.Vs.front().build(p.field);
    inst = Instance{W, {V}, static_cast<int>(V.dim())};
    cert_json = &r.results.at("certificate");
    BoundValue b = extension_bound(p.field, as_int(W.ambient()), as_int(W.dim()), W.height().sq, V.height().sq, fine);
    Certificate c = certificate_from(*cert_json, p.field);
    std::vector<KVector> cols;
    for (const auto& e : V.basis_vectors()) cols.push_back(to_kvector(e));
    cols.push_back(to_kvector(c.witness));
    extra["spansW"] = Subspace::from_basis(p.field, cols) == W;
    extra["withinBound"] = c.witness_height_sq <= b.upper * b.upper;
    extra_ok = extra["spansW"].get<bool>() && extra["withinBound"].get<bool>();
  } else if (r.task == "nonvanish-forms") {
    auto forms = matrix_from(param(p, "forms"), p.field);
    if (forms.empty()) throw MalformedInput("forms must not be empty");
    const std::size_t N = forms.front().size();
    std::vector<Subspace> kernels;
    for (const auto& L : forms) kernels.push_back(nullspace_of_form(p.field, L));
    inst = Instance{Subspace::full(p.field, N), kernels, as_int(N) - 1};
    cert_json = &r.results.at("certificate");
    Certificate c = certificate_from(*cert_json, p.field);
    bool nonzero = true;
    for (const auto& L : forms) nonzero = nonzero && !evaluate_form(L, c.witness).is_zero();
    BoundValue b = inverse_siegel_bound(p.field, as_int(N), static_cast<long>(forms.size()), fine);
    extra["formsNonzero"] = nonzero;
    extra["withinBound"] = c.witness_height_sq <= b.upper * b.upper;
    extra_ok = nonzero && extra["withinBound"].get<bool>();
  } else if (r.task == "probe") {
    Subspace W = need_W(p);
    Subspace V = Subspace::from_basis(p.field, matrix_from(r.results.at("avoid"), p.field));
    inst = Instance{W, {V}, as_int(W.dim()) - 1};
    cert_json = &r.results.at("certificate");
  } else {
    throw MalformedInput("verify-report handles search, extend, nonvanish-forms and probe reports");
  }

  Certificate c = certificate_from(*cert_json, p.field);
  VerifyReport rep = verify_certificate(*inst, c, opts);
  v.details = {{"digest", digest_ok},
               {"inW", rep.in_W},
               {"avoidsAll", rep.avoids_all},
               {"heightMatches", rep.height_matches},
               {"withinRSq", rep.within_R_sq},
               {"withinRadii", rep.within_radii},
               {"withinMain", rep.within_main},
               {"boundsReproduced", rep.bounds_reproduced},
               {"precisionBits", fine.frac_bits}};
  for (const auto& [k, val] : extra.items()) v.details[k] = val;
  v.ok = digest_ok && rep.ok() && extra_ok;
  v.details["ok"] = v.ok;
  return v;
}

}  // namespace siegel::io
