#include "dynsamp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "dynsamp/fixtures.hpp"
#include "dynsamp/io.hpp"

namespace dynsamp::cli {

namespace {

using io::Json;

struct Options {
  double tol_rank = 0.0;
  double tol_cluster = 0.0;
  double delta = 1e-3;
  std::vector<std::size_t> K;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  bool exhaustive = false;
  bool greedy = false;

  std::string matrix, scheme, samples, signal, sequence, factorization, csv;
  double sigma = 0.0;
  std::size_t L_max = 20;
  std::size_t size_cap = 0;
  bool with_matrix = false;
  bool no_series = false;

  Tolerances tolerances() const {
    Tolerances t;
    t.rank = tol_rank;
    t.cluster = tol_cluster;
    return t;
  }
};

struct Outcome {
  Json body;
  int code = 0;
};

void flatten(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
    return;
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    // complex pair
    std::string v = io::dump(j);
    v.pop_back();
    out += prefix + ": " + v + "\n";
    return;
  }
  if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "[" + std::to_string(k) + "]", out);
    return;
  }
  std::string v = io::dump(j);
  v.pop_back();
  out += prefix + ": " + v + "\n";
}

std::string render(const Json& body, const std::string& format) {
  if (format == "text") {
    std::string out;
    flatten(body, "", out);
    return out;
  }
  return io::dump(body);
}

// Jordan structure from a supplied factorization or computed from A.
JordanStructure structure_for(const ComplexMatrix& a, const Options& o) {
  if (!o.factorization.empty()) {
    const auto [b, j] = io::read_factorization(o.factorization);
    return jordan_from_factorization(b, j, a, o.tolerances());
  }
  return jordan_structure(a, o.tolerances());
}

Outcome cmd_analyze(const Options& o) {
  const ComplexMatrix a = io::read_matrix(o.matrix);
  require_square(a, "operator");
  const SamplingScheme scheme = io::scheme_from_json(io::read_json_file(o.scheme), o.scheme);
  scheme.validate(static_cast<std::size_t>(a.rows()));
  const Tolerances tol = resolve_tolerances(a, o.tolerances());

  Json body;
  body["dimension"] = a.rows();
  body["scheme"] = io::to_json(scheme);

  FeasibilityReport criterion;
  std::optional<JordanStructure> js;
  if (!o.factorization.empty()) {
    js = structure_for(a, o);
    criterion = check_jordan(*js, scheme.sites);
    body["path"] = "supplied";
    body["structure"] = io::to_json(*js);
  } else {
    OperatorCheck oc = check_operator(a, scheme.sites, tol);
    criterion = oc.report;
    body["path"] = oc.jordan_path ? "jordan" : "diagonalizable";
    if (oc.jordan) {
      js = std::move(oc.jordan);
      body["structure"] = io::to_json(*js);
    } else {
      body["structure"] = io::to_json(*oc.spectral);
    }
  }
  body["criterion"] = io::to_json(criterion);

  bool budgets_cover = true;
  for (std::size_t k = 0; k < scheme.sites.size(); ++k) {
    const auto& need = criterion.used_budgets[k];
    if (need && scheme.budgets[k] < *need) budgets_cover = false;
  }
  body["budgets_cover_degrees"] = budgets_cover;
  if (scheme.uniform) {
    if (!js) js = jordan_structure(a, tol);
    const FixedBudgetResult fb = check_fixed_L(*js, scheme.sites, *scheme.uniform);
    body["fixed_L"] = Json{{"L", *scheme.uniform}, {"feasible", fb.feasible}, {"span_rank", fb.span_rank}};
  }

  const bool brute = brute_force_feasible(a, scheme, tol.rank);
  const FrameReport frame = frame_bounds(build_sampling_matrix(a, scheme), tol.rank);
  body["brute_force"] = brute;
  body["frame"] = io::to_json(frame);
  body["feasible"] = frame.feasible;
  return {body, frame.feasible ? 0 : 2};
}

Outcome cmd_reconstruct(const Options& o) {
  const ComplexMatrix a = io::read_matrix(o.matrix);
  require_square(a, "operator");
  const TimeSpaceSamples s = io::samples_from_json(io::read_json_file(o.samples), o.samples);
  const Reconstruction r = reconstruct(a, s, o.tol_rank);
  return {io::to_json(r), r.underdetermined ? 2 : 0};
}

Outcome cmd_sample(const Options& o) {
  const ComplexMatrix a = io::read_matrix(o.matrix);
  require_square(a, "operator");
  const SamplingScheme scheme = io::scheme_from_json(io::read_json_file(o.scheme), o.scheme);
  const ComplexVector f = io::read_vector(o.signal);
  return {io::to_json(simulate_samples(a, scheme, f, o.sigma, o.seed)), 0};
}

Outcome cmd_place(const Options& o) {
  const ComplexMatrix a = io::read_matrix(o.matrix);
  require_square(a, "operator");
  const JordanStructure js = structure_for(a, o);
  if (o.greedy) return {io::to_json(greedy_placement(js)), 0};
  const std::size_t cap = o.size_cap > 0 ? o.size_cap : js.dim();
  const auto r = minimal_placement_exhaustive(js, cap);
  if (!r) return {Json{{"omega", nullptr}, {"size_cap", cap}, {"method", "exhaustive"}}, 2};
  return {io::to_json(*r), 0};
}

Outcome cmd_minimal_l(const Options& o) {
  const ComplexMatrix a = io::read_matrix(o.matrix);
  require_square(a, "operator");
  const JordanStructure js = structure_for(a, o);
  const SamplingScheme scheme = io::scheme_from_json(io::read_json_file(o.scheme), o.scheme);
  const auto L = minimal_uniform_L(js, scheme.sites, o.L_max);
  Json body;
  Json om = Json::array();
  for (auto i : scheme.sites) om.push_back(i + 1);
  body["omega"] = std::move(om);
  body["L_max"] = o.L_max;
  body["L"] = L ? Json(*L) : Json(nullptr);
  return {body, L ? 0 : 2};
}

// K list: several values as given, one value K as (K, 2K, 4K), none as the
// generator size or quarter/half/full of an explicit list.
std::vector<std::size_t> k_list(const Options& o, const Json& spec, std::size_t n) {
  std::vector<std::size_t> ks;
  if (o.K.size() > 1) {
    ks = o.K;
  } else {
    std::size_t base = !o.K.empty() ? o.K.front() : 0;
    if (base == 0) {
      if (spec.contains("family")) {
        base = n;
      } else {
        ks = {(n + 3) / 4, (n + 1) / 2, n};
      }
    }
    if (ks.empty()) ks = {base, 2 * base, 4 * base};
  }
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  for (std::size_t k = 0; k < ks.size(); ++k) {
    if (ks[k] == 0 || (k > 0 && ks[k] <= ks[k - 1])) {
      throw Error(ErrorCode::DegenerateInput, "K list must be positive and ascending");
    }
  }
  return ks;
}

io::SequenceInput load_sequence(const Options& o, std::vector<std::size_t>& ks) {
  Json spec = io::read_json_file(o.sequence);
  io::SequenceInput in = io::sequence_from_json(spec, o.sequence);
  ks = k_list(o, spec, in.seq.size());
  const std::size_t need = ks.back();
  if (need > in.seq.size()) {
    if (!spec.contains("family") || in.b) {
      throw Error(ErrorCode::DegenerateInput, "K = " + std::to_string(need) +
                                                  " exceeds the sequence length " +
                                                  std::to_string(in.seq.size()));
    }
    spec["K"] = need;
    in = io::sequence_from_json(spec, o.sequence);
  }
  return in;
}

Outcome cmd_carleson(const Options& o) {
  std::vector<std::size_t> ks;
  const io::SequenceInput in = load_sequence(o, ks);
  const DiskSequence seq = in.seq.prefix(ks.back());
  const ComplexVector b = in.b ? ComplexVector(in.b->head(static_cast<Eigen::Index>(ks.back())))
                               : standard_weights(seq);
  VerdictOptions vo;
  vo.delta = o.delta;
  const CarlesonReport cr = carleson_products(seq);
  const auto trend = verdict_trend(seq, b, ks, vo);

  Json rows = Json::array();
  for (const auto& t : trend) {
    rows.push_back(Json{{"K", t.verdict.K},
                        {"carleson_infimum", t.verdict.carleson_infimum},
                        {"gramian_min", t.gramian_min},
                        {"gramian_max", t.gramian_max},
                        {"overall", t.verdict.overall}});
  }
  const OnePointVerdict& last = trend.back().verdict;
  Json body;
  body["K_list"] = ks;
  body["carleson"] = io::to_json(cr);
  body["trend"] = std::move(rows);
  body["verdict"] = io::to_json(last);

  if (!o.csv.empty()) {
    std::ostringstream csv;
    csv << "kind,index,value\n";
    const auto line = [&](const char* kind, std::size_t idx, double v) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      csv << kind << ',' << idx << ',' << buf << '\n';
    };
    for (std::size_t n = 0; n < cr.products.size(); ++n) line("product", n + 1, cr.products[n]);
    for (const auto& t : trend) {
      line("gramian_min", t.verdict.K, t.gramian_min);
      line("gramian_max", t.verdict.K, t.gramian_max);
    }
    io::write_atomically(o.csv, csv.str());
  }
  return {body, last.overall ? 0 : 2};
}

Outcome cmd_gramian(const Options& o) {
  Json spec = io::read_json_file(o.sequence);
  io::SequenceInput in = io::sequence_from_json(spec, o.sequence);
  std::size_t K = o.K.empty() ? in.seq.size() : o.K.front();
  if (K > in.seq.size()) {
    if (!spec.contains("family")) throw Error(ErrorCode::DegenerateInput, "K exceeds the sequence length");
    spec["K"] = K;
    in = io::sequence_from_json(spec, o.sequence);
  }
  const GramianReport g = truncated_gramian(in.seq.prefix(K), !o.no_series);
  return {io::to_json(g, o.with_matrix), 0};
}

Json verdict_row(const ComplexMatrix& a, std::vector<std::size_t> sites_1based,
                 std::optional<std::size_t> L, std::vector<std::size_t> budgets, double rank_tol) {
  std::vector<std::size_t> sites;
  for (auto s : sites_1based) sites.push_back(s - 1);
  SamplingScheme scheme = L ? SamplingScheme::with_uniform_budget(sites, *L)
                            : SamplingScheme::with_budgets(sites, budgets);
  const bool brute = brute_force_feasible(a, scheme, rank_tol);
  Json row = io::to_json(scheme);
  row["feasible"] = brute;
  return row;
}

Outcome cmd_demo(const Options& o) {
  const double tol = o.tol_rank;
  Json body;
  {
    const ComplexMatrix p = fixtures::matrix_P();
    Json cases = Json::array();
    cases.push_back(verdict_row(p, {2}, 4, {}, tol));
    cases.push_back(verdict_row(p, {3}, 20, {}, tol));
    cases.push_back(verdict_row(p, {3, 4, 5}, 1, {}, tol));
    cases.push_back(verdict_row(p, {3, 4}, 20, {}, tol));
    const JordanStructure js = jordan_structure(p, o.tolerances());
    body["P"] = Json{{"schemes", std::move(cases)},
                     {"placement", io::to_json(*minimal_placement_exhaustive(js, 5))}};
  }
  {
    const ComplexMatrix q = fixtures::matrix_Q();
    Json cases = Json::array();
    cases.push_back(verdict_row(q, {1, 2, 4}, std::nullopt, {4, 4, 1}, tol));
    cases.push_back(verdict_row(q, {1, 2, 3}, 20, {}, tol));
    const JordanStructure js = jordan_structure(q, o.tolerances());
    body["Q"] = Json{{"schemes", std::move(cases)},
                     {"placement", io::to_json(*minimal_placement_exhaustive(js, 5))}};
  }
  {
    const ComplexMatrix r = fixtures::matrix_R();
    Json cases = Json::array();
    for (std::size_t i = 1; i <= 5; ++i) cases.push_back(verdict_row(r, {i}, 20, {}, tol));
    cases.push_back(verdict_row(r, {1, 3}, 5, {}, tol));
    cases.push_back(verdict_row(r, {1, 2}, 20, {}, tol));
    const JordanStructure js = jordan_structure(r, o.tolerances());
    body["R"] = Json{{"structure", io::to_json(js)},
                     {"schemes", std::move(cases)},
                     {"placement", io::to_json(*minimal_placement_exhaustive(js, 5))}};
  }
  {
    Json rows = Json::array();
    for (std::size_t m : {2, 4, 10}) rows.push_back(io::to_json(circulant_riesz_demo(m)));
    Json variant = io::to_json(circulant_riesz_demo(4, 4));
    variant["step"] = 4;
    rows.push_back(std::move(variant));
    body["circulant"] = std::move(rows);
  }
  {
    const ComplexMatrix m = fixtures::companion_M();
    const ComplexVector b = rational_form_counterexample(m, o.seed == 0 ? 7 : o.seed);
    ComplexMatrix k(3, 3);
    ComplexVector v = b;
    for (int j = 0; j < 3; ++j) {
      k.col(j) = v;
      v = m * v;
    }
    body["rational_form"] = Json{{"b", io::to_json(b)}, {"krylov_rank", rank_with_tol(k, Tolerances::default_rank(3))}};
  }
  return {body, 0};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Dynamical sampling: recoverability, reconstruction, placement and disk-sequence numerics"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  app.add_option("--tol-rank", o.tol_rank, "relative rank threshold (0 = d*eps*1e4)")->check(CLI::NonNegativeNumber);
  app.add_option("--tol-cluster", o.tol_cluster, "eigenvalue merge distance (0 = 1e-8*||A||)")->check(CLI::NonNegativeNumber);
  app.add_option("--delta", o.delta, "Carleson infimum floor")->check(CLI::PositiveNumber);
  app.add_option("--K", o.K, "truncation level(s)")->delimiter(',');
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", o.out, "write the report here instead of stdout");
  auto* ex = app.add_flag("--exhaustive", o.exhaustive, "exhaustive placement search (default)");
  auto* gr = app.add_flag("--greedy", o.greedy, "greedy placement");
  ex->excludes(gr);

  auto* analyze = app.add_subcommand("analyze", "feasibility, frame bounds and oracle cross-check");
  analyze->add_option("matrix", o.matrix)->required();
  analyze->add_option("scheme", o.scheme)->required();
  analyze->add_option("--factorization", o.factorization, "supplied {B, J} pair");

  auto* recon = app.add_subcommand("reconstruct", "least-squares recovery from samples");
  recon->add_option("matrix", o.matrix)->required();
  recon->add_option("samples", o.samples)->required();

  auto* sample = app.add_subcommand("sample", "simulate time-space samples");
  sample->add_option("matrix", o.matrix)->required();
  sample->add_option("scheme", o.scheme)->required();
  sample->add_option("signal", o.signal)->required();
  sample->add_option("--sigma", o.sigma, "noise level")->check(CLI::NonNegativeNumber);

  auto* place = app.add_subcommand("place", "minimal sensor placement");
  place->add_option("matrix", o.matrix)->required();
  place->add_option("--factorization", o.factorization, "supplied {B, J} pair");
  place->add_option("--size-cap", o.size_cap, "largest set size to try");

  auto* minl = app.add_subcommand("minimal-l", "smallest uniform time budget");
  minl->add_option("matrix", o.matrix)->required();
  minl->add_option("scheme", o.scheme)->required();
  minl->add_option("--factorization", o.factorization, "supplied {B, J} pair");
  minl->add_option("--L-max", o.L_max, "search bound");

  auto* carl = app.add_subcommand("carleson", "Carleson products and one-point frame verdict");
  carl->add_option("sequence", o.sequence)->required();
  carl->add_option("--csv", o.csv, "plot data: per-n products and per-K Gramian eigenvalues");

  auto* gram = app.add_subcommand("gramian", "truncated kernel Gramian");
  gram->add_option("sequence", o.sequence)->required();
  gram->add_flag("--matrix", o.with_matrix, "include the entries");
  gram->add_flag("--no-series", o.no_series, "skip the series cross-check");

  auto* demo = app.add_subcommand("demo", "worked fixtures and the circulant demo");

  for (auto* sub : {analyze, recon, sample, place, minl, carl, gram, demo}) sub->fallthrough();

  std::vector<std::string> args;
  for (int k = argc - 1; k > 0; --k) args.emplace_back(argv[k]);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_ss, e_ss;
    const int code = app.exit(e, o_ss, e_ss);
    out << o_ss.str();
    err << e_ss.str();
    return code == 0 ? 0 : 1;
  }

  try {
    Outcome res;
    if (analyze->parsed()) res = cmd_analyze(o);
    else if (recon->parsed()) res = cmd_reconstruct(o);
    else if (sample->parsed()) res = cmd_sample(o);
    else if (place->parsed()) res = cmd_place(o);
    else if (minl->parsed()) res = cmd_minimal_l(o);
    else if (carl->parsed()) res = cmd_carleson(o);
    else if (gram->parsed()) res = cmd_gramian(o);
    else res = cmd_demo(o);

    const std::string text = render(res.body, o.format);
    if (o.out.empty()) {
      out << text;
    } else {
      io::write_atomically(o.out, text);
    }
    return res.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dynsamp::cli
