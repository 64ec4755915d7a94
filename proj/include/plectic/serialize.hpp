#pragma once

#include "plectic/quantize.hpp"

#include "json.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace plectic {

using json = nlohmann::ordered_json;

/// Malformed input, located by a JSON pointer.
class InputError : public std::runtime_error {
public:
  InputError(std::string pointer, const std::string& what)
      : std::runtime_error(pointer + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

private:
  std::string pointer_;
};

json to_json(const Q& q);
json to_json(const QVec& v);
json to_json(const Poly& p);
json to_json(const Form& a);
json to_json(const MultiVec& v);
json to_json(const UElement& x);
json to_json(const ObsSimplex& x);
json to_json(const Phase& p);
json to_json(const PhaseSum& s);
json to_json(const HomologyResult& h);

Q rational_from(const json& j, const std::string& ptr);
QVec vector_from(const json& j, int dim, const std::string& ptr);
std::vector<QVec> vertices_from(const json& j, int dim, const std::string& ptr);
Poly poly_from(const json& j, int dim, const std::string& ptr);
Form form_from(const json& j, Chart chart, const std::string& ptr);
MultiVec multivec_from(const json& j, Chart chart, const std::string& ptr);
/// alpha is ignored on input and recomputed canonically.
ObsSimplex obs_from(const json& j, const Plectic& P, const std::string& ptr);
StateCochain state_from(const json& j, const std::string& ptr);

struct NamedHam {
  std::string name;
  HamPair pair;
};

/// A parsed problem file ("schema": 1).
struct Problem {
  Plectic plectic;
  BracketSign sign = BracketSign::Standard;
  std::vector<NamedHam> hamiltonians;
  /// Families as indices into hamiltonians.
  std::vector<std::vector<int>> families;
  std::vector<ObsSimplex> simplices;
  std::vector<Horn> horns;
  /// Complexes as seed indices into simplices.
  std::vector<std::vector<int>> complexes;
  std::vector<StateCochain> states;
  std::vector<std::pair<Form, AffSimplex>> integrals;
  std::vector<Chain> cycles;
  std::vector<AffSimplex> tetrahedra;
};

Problem problem_from(const json& j);
Problem load_problem(const std::string& path);

} // namespace plectic
