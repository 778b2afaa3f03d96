#include "dynsamp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dynsamp::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw Error(ErrorCode::ParseError, where + ": " + msg);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void dump_into(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump_into(it.value(), out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalars = true;
      for (const auto& e : j) scalars = scalars && !e.is_structured();
      if (scalars) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out += ", ";
          dump_into(j[k], out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += pad;
        dump_into(j[k], out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

std::size_t to_index(const Json& j, const std::string& where) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(where, "expected a nonnegative integer");
  const auto v = j.get<long long>();
  if (v < 0) fail(where, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

double to_double(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
  }
  fail(where, "expected a number");
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(source, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": malformed JSON");
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) {
  return parse_json(read_text_file(path), path.string());
}

std::string dump(const Json& j) {
  std::string out;
  dump_into(j, out, 0);
  out += "\n";
  return out;
}

Json to_json_number(double x) { return Json(x); }

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ComplexVector& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(to_json(v(k)));
  return a;
}

Json to_json(const ComplexMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json e = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) e.push_back(to_json(m(r, c)));
  }
  j["entries"] = std::move(e);
  return j;
}

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(where, "expected a number or a [re, im] pair");
}

ComplexVector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a list of entries");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k], where + "[" + std::to_string(k) + "]");
  }
  return v;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& where) {
  const std::size_t rows = to_index(member(j, "rows", where), where + ".rows");
  const std::size_t cols = to_index(member(j, "cols", where), where + ".cols");
  const Json& e = member(j, "entries", where);
  if (!e.is_array() || e.size() != rows * cols) {
    fail(where, "entries must list rows*cols = " + std::to_string(rows * cols) + " values");
  }
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t k = 0; k < e.size(); ++k) {
    m(static_cast<Eigen::Index>(k / cols), static_cast<Eigen::Index>(k % cols)) =
        complex_from_json(e[k], where + ".entries[" + std::to_string(k) + "]");
  }
  if (!m.allFinite()) fail(where, "non-finite entry");
  return m;
}

ComplexMatrix matrix_from_csv(const std::string& text, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    for (char& c : line) {
      if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
    }
    const auto first = line.find_first_not_of(' ');
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || !std::isfinite(v)) {
        fail(source, "line " + std::to_string(lineno) + ": not a finite number: \"" + tok + "\"");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(source, "line " + std::to_string(lineno) + ": expected " +
                       std::to_string(rows.front().size()) + " columns, found " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(source, "no matrix rows");
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return m;
}

ComplexMatrix read_matrix(const std::filesystem::path& path) {
  if (path.extension() == ".csv") return matrix_from_csv(read_text_file(path), path.string());
  return matrix_from_json(read_json_file(path), path.string());
}

std::pair<ComplexMatrix, ComplexMatrix> read_factorization(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  const std::string w = path.string();
  return {matrix_from_json(member(j, "B", w), w + ".B"), matrix_from_json(member(j, "J", w), w + ".J")};
}

SamplingScheme scheme_from_json(const Json& j, const std::string& where) {
  const Json& om = member(j, "omega", where);
  if (!om.is_array()) fail(where, "omega must be a list");
  std::vector<std::size_t> sites;
  for (std::size_t k = 0; k < om.size(); ++k) {
    const std::size_t s = to_index(om[k], where + ".omega[" + std::to_string(k) + "]");
    if (s == 0) fail(where, "sites are 1-based; found 0");
    sites.push_back(s - 1);
  }
  const bool has_b = j.contains("budgets") && !j["budgets"].is_null();
  const bool has_l = j.contains("L") && !j["L"].is_null();
  if (has_b == has_l) fail(where, "give exactly one of \"budgets\" and \"L\"");
  if (has_l) return SamplingScheme::with_uniform_budget(std::move(sites), to_index(j["L"], where + ".L"));
  const Json& b = j["budgets"];
  if (!b.is_array()) fail(where, "budgets must be a list");
  std::vector<std::size_t> budgets;
  for (std::size_t k = 0; k < b.size(); ++k) {
    budgets.push_back(to_index(b[k], where + ".budgets[" + std::to_string(k) + "]"));
  }
  if (budgets.size() != sites.size()) fail(where, "budgets length differs from omega length");
  return SamplingScheme::with_budgets(std::move(sites), std::move(budgets));
}

Json to_json(const SamplingScheme& s) {
  Json j;
  Json om = Json::array();
  for (auto i : s.sites) om.push_back(i + 1);
  j["omega"] = std::move(om);
  if (s.uniform) {
    j["L"] = *s.uniform;
  } else {
    j["budgets"] = s.budgets;
  }
  return j;
}

TimeSpaceSamples samples_from_json(const Json& j, const std::string& where) {
  TimeSpaceSamples s;
  s.scheme = scheme_from_json(member(j, "scheme", where), where + ".scheme");
  s.values = vector_from_json(member(j, "values", where), where + ".values");
  if (static_cast<std::size_t>(s.values.size()) != s.scheme.sample_count()) {
    fail(where, "expected " + std::to_string(s.scheme.sample_count()) + " values, found " +
                    std::to_string(s.values.size()));
  }
  if (j.contains("noise") && !j["noise"].is_null()) {
    const Json& n = j["noise"];
    NoiseMeta meta;
    meta.sigma = to_double(member(n, "sigma", where + ".noise"), where + ".noise.sigma");
    meta.seed = to_index(member(n, "seed", where + ".noise"), where + ".noise.seed");
    s.noise = meta;
  }
  return s;
}

Json to_json(const TimeSpaceSamples& s) {
  Json j;
  j["scheme"] = to_json(s.scheme);
  j["values"] = to_json(s.values);
  if (s.noise) {
    j["noise"] = Json{{"sigma", s.noise->sigma}, {"seed", s.noise->seed}};
  } else {
    j["noise"] = nullptr;
  }
  return j;
}

ComplexVector read_vector(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  if (j.is_object()) return vector_from_json(member(j, "values", path.string()), path.string());
  return vector_from_json(j, path.string());
}

SequenceInput sequence_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  std::optional<DiskSequence> seq;
  if (j.contains("family")) {
    const std::string fam = j["family"].is_string() ? j["family"].get<std::string>() : "";
    const std::size_t K = to_index(member(j, "K", where), where + ".K");
    if (fam == "geometric") {
      seq = DiskSequence::geometric(to_double(member(j, "rate", where), where + ".rate"), K);
    } else if (fam == "polynomial") {
      seq = DiskSequence::polynomial(to_double(member(j, "power", where), where + ".power"), K);
    } else {
      fail(where, "family must be \"geometric\" or \"polynomial\"");
    }
  } else {
    const ComplexVector l = vector_from_json(member(j, "lambdas", where), where + ".lambdas");
    std::vector<Complex> lambdas(l.data(), l.data() + l.size());
    seq = DiskSequence::from_lambdas(lambdas);
  }
  SequenceInput in{*seq, std::nullopt};
  if (j.contains("b") && !j["b"].is_null()) {
    in.b = vector_from_json(j["b"], where + ".b");
    if (static_cast<std::size_t>(in.b->size()) != in.seq.size()) fail(where, "b length differs from the sequence length");
  }
  return in;
}

namespace {

Json sites_json(const std::vector<std::size_t>& sites) {
  Json a = Json::array();
  for (auto i : sites) a.push_back(i + 1);
  return a;
}

Json real_vector_json(const RealVector& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

Json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

Json to_json(const FeasibilityReport& r) {
  Json j;
  j["feasible"] = r.feasible;
  Json per = Json::array();
  for (const auto& c : r.per_eigenvalue) {
    per.push_back(Json{{"lambda", to_json(c.value)}, {"required_rank", c.required}, {"achieved_rank", c.achieved}});
  }
  j["per_eigenvalue"] = std::move(per);
  Json w = Json::array();
  for (auto z : r.witness) w.push_back(to_json(z));
  j["witness"] = std::move(w);
  j["sites"] = sites_json(r.sites);
  Json ub = Json::array();
  for (const auto& b : r.used_budgets) ub.push_back(b ? Json(*b) : Json(nullptr));
  j["used_budgets"] = std::move(ub);
  j["inert_sites"] = sites_json(r.inert_sites);
  j["warnings"] = r.warnings;
  return j;
}

Json to_json(const FrameReport& r) {
  return Json{{"c1", number(r.lower)},
              {"c2", number(r.upper)},
              {"condition", number(r.condition)},
              {"feasible", r.feasible},
              {"singular_values", real_vector_json(r.singular_values)}};
}

Json to_json(const Reconstruction& r) {
  return Json{{"signal", to_json(r.signal)},
              {"residual", number(r.residual)},
              {"underdetermined", r.underdetermined},
              {"warning", r.warning},
              {"frame", to_json(r.frame)}};
}

Json to_json(const PlacementResult& r) {
  return Json{{"omega", sites_json(r.omega)},
              {"size", r.size()},
              {"method", std::string(to_string(r.method))},
              {"optimal", r.optimal},
              {"certificate", to_json(r.certificate)}};
}

Json to_json(const CarlesonReport& r) {
  Json pairs = Json::array();
  for (const auto& [a, b] : r.coincident) pairs.push_back(Json::array({a + 1, b + 1}));
  return Json{{"products", r.products},
              {"infimum", number(r.infimum)},
              {"argmin", r.argmin + 1},
              {"coincident", std::move(pairs)}};
}

Json to_json(const GramianReport& r, bool include_matrix) {
  Json j{{"K", r.K},
         {"min_eigenvalue", number(r.min_eigenvalue)},
         {"max_eigenvalue", number(r.max_eigenvalue)},
         {"condition", number(r.condition)},
         {"series_residual", r.series_residual ? number(*r.series_residual) : Json(nullptr)}};
  if (include_matrix) j["gramian"] = to_json(r.gramian);
  return j;
}

Json to_json(const OnePointVerdict& v) {
  return Json{{"K", v.K},
              {"inside_disk", v.inside_disk},
              {"trend", number(v.trend)},
              {"accumulates", v.accumulates},
              {"carleson_infimum", number(v.carleson_infimum)},
              {"carleson", v.carleson},
              {"weight_min", number(v.weight_min)},
              {"weight_max", number(v.weight_max)},
              {"weights_bounded", v.weights_bounded},
              {"overall", v.overall},
              {"settings", Json{{"delta", v.options.delta},
                                {"trend_ratio", v.options.trend_ratio},
                                {"weight_lower", v.options.weight_lower},
                                {"weight_upper", v.options.weight_upper}}},
              {"note", v.note}};
}

Json to_json(const CirculantDemo& d) {
  return Json{{"m", d.m},
              {"dimension", d.dimension},
              {"rank", d.rank},
              {"condition", number(d.condition)},
              {"basis", d.basis}};
}

Json to_json(const JordanStructure& js) {
  Json evs = Json::array();
  for (const auto& ev : js.eigenvalues) {
    Json rows = Json::array();
    for (auto k : ev.cyclic_rows) rows.push_back(k + 1);
    evs.push_back(Json{{"lambda", to_json(ev.value)},
                       {"block_sizes", ev.block_sizes},
                       {"block_count", ev.block_count()},
                       {"cyclic_rows", std::move(rows)}});
  }
  return Json{{"eigenvalues", std::move(evs)},
              {"residual", number(js.residual)},
              {"condition", number(js.condition)},
              {"trusted", js.trusted},
              {"supplied", js.supplied},
              {"warnings", js.warnings}};
}

Json to_json(const SpectralData& spec) {
  Json evs = Json::array();
  for (std::size_t j = 0; j < spec.count(); ++j) {
    evs.push_back(Json{{"lambda", to_json(spec.eigenvalues[j])}, {"multiplicity", spec.multiplicities[j]}});
  }
  return Json{{"eigenvalues", std::move(evs)},
              {"residual", number(spec.residual)},
              {"condition", number(spec.condition)},
              {"trusted", spec.trusted},
              {"warnings", spec.warnings}};
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::ParseError, path.string() + ": cannot write");
    out << content;
    if (!out) throw Error(ErrorCode::ParseError, path.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace dynsamp::io
