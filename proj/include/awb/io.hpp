#pragma once

// JSON files for algebras, actions, crossed modules, cat1-algebras and
// morphisms, and the helpers that turn results into versioned reports.
//
// Scalars are always strings: "p/q" or "p" over Q, decimal residues over
// GF(p). A reference to an algebra is either an embedded algebra object or a
// path, resolved against the directory of the referencing file.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "awb/action.hpp"
#include "awb/awb.hpp"
#include "awb/checks.hpp"
#include "awb/xmod.hpp"

namespace awb::io {

using Json = nlohmann::json;

inline constexpr int format_version = 1;
inline constexpr int report_schema_version = 1;

struct LoadOptions {
  bool allow_invalid = false;  // skip validate_awb / validate_action / ... on load
};

/// Where a JSON value came from: a file (for error messages and resolving
/// relative references) plus a path inside it.
struct Origin {
  std::filesystem::path file;
  std::string pointer;  // e.g. "/product/1/0"

  Origin at(const std::string& key) const { return {file, pointer + "/" + key}; }
  Origin at(std::size_t i) const { return at(std::to_string(i)); }
  std::string describe() const;
};

/// Parse errors become InputError with line and column.
Json read_json_file(const std::filesystem::path& path);
Json parse_json_text(const std::string& text, const std::string& what);
/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);
void write_json_file(const std::filesystem::path& path, const Json& j);

/// The "field" entry of an algebra object, following one level of reference.
FieldSpec field_of(const Json& j, const Origin& where);

template <class S>
Json scalar_to_json(const S& x);
template <class S>
S scalar_from_json(const Json& j, const FieldSpec& field, const Origin& where);

template <class S>
Json matrix_to_json(const Matrix<S>& m);  // array of rows
template <class S>
Matrix<S> matrix_from_json(const Json& j, Index rows, Index cols, const FieldSpec& field, const Origin& where);

template <class S>
Json vector_to_json(const Vector<S>& v);
template <class S>
Vector<S> vector_from_json(const Json& j, Index n, const FieldSpec& field, const Origin& where);

/// t[i][j][k] = coefficient of e_k in op(e_i, e_j).
template <class S>
Json bilinear_to_json(const BilinearMap<S>& m);
template <class S>
BilinearMap<S> bilinear_from_json(const Json& j, Index left, Index right, Index out, const FieldSpec& field,
                                  const Origin& where);

/// {"basis": rows} in canonical (reduced echelon) form.
template <class S>
Json subspace_to_json(const Subspace<S>& s);
template <class S>
Subspace<S> subspace_from_json(const Json& j, Index ambient, const FieldSpec& field, const Origin& where);

// ---------------------------------------------------------------------------
// Objects

template <class S>
Json algebra_to_json(const FiniteAwb<S>& a);
template <class S>
FiniteAwb<S> algebra_from_json(const Json& j, const Origin& where, const LoadOptions& opts = {});

/// The four tensors only: {"ldot", "rdot", "lstar", "rstar"}.
template <class S>
Json action_tensors_to_json(const AwbAction<S>& act);
template <class S>
AwbAction<S> action_tensors_from_json(const Json& j, const FiniteAwb<S>& actor, const FiniteAwb<S>& actee,
                                      const Origin& where);

/// kind "action": actor, actee and the four tensors.
template <class S>
Json action_to_json(const AwbAction<S>& act);
template <class S>
AwbAction<S> action_from_json(const Json& j, const Origin& where, const LoadOptions& opts = {});

/// kind "mutual_actions" for given M and N: "m_on_n" and "n_on_m" tensors.
template <class S>
Json mutual_actions_to_json(const MutualActions<S>& mut);
template <class S>
MutualActions<S> mutual_actions_from_json(const Json& j, const FiniteAwb<S>& m, const FiniteAwb<S>& n,
                                          const Origin& where);

/// kind "xmod": m, a, mu (dim A x dim M) and the action tensors of A on M.
template <class S>
Json xmod_to_json(const CrossedModule<S>& xm);
template <class S>
CrossedModule<S> xmod_from_json(const Json& j, const Origin& where, const LoadOptions& opts = {});

/// kind "cat1": r, p (subspace), s, t.
template <class S>
Json cat1_to_json(const Cat1Awb<S>& c);
template <class S>
Cat1Awb<S> cat1_from_json(const Json& j, const Origin& where, const LoadOptions& opts = {});

/// kind "morphism": source, target, matrix (dim target x dim source).
template <class S>
Json morphism_to_json(const AwbMorphism<S>& f);
template <class S>
AwbMorphism<S> morphism_from_json(const Json& j, const Origin& where, const LoadOptions& opts = {});

/// Loads a file and reads its top-level object.
template <class S>
FiniteAwb<S> load_algebra(const std::filesystem::path& path, const LoadOptions& opts = {});

// ---------------------------------------------------------------------------
// Reports

/// At most max_witnesses witnesses are listed; "witness_count" has the total.
Json validation_to_json(const ValidationReport& r, std::size_t max_witnesses = 20);
Json checks_to_json(const CheckList& c);
/// Sizes of every generated equation and relation family.
Json family_counts_json();
/// {"schema_version", "command", "families", "status"} plus the body.
Json make_report(const std::string& command, bool pass, Json body);

}  // namespace awb::io
