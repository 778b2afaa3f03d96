#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "dynsamp/hardy.hpp"
#include "dynsamp/placement.hpp"
#include "dynsamp/sampling.hpp"

namespace dynsamp::io {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);

/// Canonical form: two-space indent, keys in insertion order, doubles with
/// 17 significant digits, non-finite numbers as the strings "inf", "-inf",
/// "nan". Ends with a newline.
std::string dump(const Json& j);

Json to_json(Complex z);
Json to_json(const ComplexVector& v);
Json to_json(const ComplexMatrix& m);
Json to_json_number(double x);

Complex complex_from_json(const Json& j, const std::string& where);
ComplexVector vector_from_json(const Json& j, const std::string& where);
/// {"rows": r, "cols": c, "entries": [[re, im], ...]} row-major.
ComplexMatrix matrix_from_json(const Json& j, const std::string& where);
/// Plain numeric grid, comma or whitespace separated; blank lines and lines
/// starting with '#' are skipped.
ComplexMatrix matrix_from_csv(const std::string& text, const std::string& source);
/// Dispatches on the extension: .csv or JSON.
ComplexMatrix read_matrix(const std::filesystem::path& path);

/// {"B": matrix, "J": matrix}
std::pair<ComplexMatrix, ComplexMatrix> read_factorization(const std::filesystem::path& path);

/// {"omega": [1-based sites], "budgets": [...]} or {"omega": [...], "L": n}.
SamplingScheme scheme_from_json(const Json& j, const std::string& where);
Json to_json(const SamplingScheme& s);

/// {"scheme": ..., "values": [[re, im], ...], "noise": {"sigma", "seed"} | null}
TimeSpaceSamples samples_from_json(const Json& j, const std::string& where);
Json to_json(const TimeSpaceSamples& s);

/// A vector file: either a bare list of entries or {"values": [...]}.
ComplexVector read_vector(const std::filesystem::path& path);

struct SequenceInput {
  DiskSequence seq;
  std::optional<ComplexVector> b;
};
/// {"lambdas": [...], "b": [...] | null} or a generator
/// {"family": "geometric", "rate": r, "K": n} / {"family": "polynomial", "power": p, "K": n}.
SequenceInput sequence_from_json(const Json& j, const std::string& where);

Json to_json(const FeasibilityReport& r);
Json to_json(const FrameReport& r);
Json to_json(const Reconstruction& r);
Json to_json(const PlacementResult& r);
Json to_json(const CarlesonReport& r);
Json to_json(const GramianReport& r, bool include_matrix = false);
Json to_json(const OnePointVerdict& v);
Json to_json(const CirculantDemo& d);
Json to_json(const JordanStructure& js);
Json to_json(const SpectralData& spec);

/// Writes to a temporary sibling and renames it over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace dynsamp::io
