#include "qfa/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace qfa {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

const ordered_json& field(const ordered_json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    fail("missing field '" + std::string(key) + "'");
  }
  return *it;
}

double number_at(const ordered_json& j, const std::string& what) {
  if (!j.is_number()) {
    fail(what + " must be a number");
  }
  return j.get<double>();
}

Complex complex_at(const ordered_json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) {
    fail(what + " must be a [re, im] pair");
  }
  return {number_at(j[0], what), number_at(j[1], what)};
}

Vector vector_at(const ordered_json& j, const std::string& what) {
  if (!j.is_array()) {
    fail(what + " must be an array of [re, im] pairs");
  }
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Index>(i)) = complex_at(j[i], what + " entry");
  }
  return v;
}

Matrix matrix_at(const ordered_json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) {
    fail(what + " must be a nonempty array of rows");
  }
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) {
    fail(what + " rows must be nonempty arrays");
  }
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      fail(what + " rows must all have the same length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          complex_at(j[r][c], what + " entry");
    }
  }
  return m;
}

std::vector<std::string> names_at(const ordered_json& j,
                                  const std::string& what) {
  if (!j.is_array()) {
    fail(what + " must be an array of strings");
  }
  std::vector<std::string> names;
  names.reserve(j.size());
  for (const ordered_json& entry : j) {
    if (!entry.is_string()) {
      fail(what + " must contain only strings");
    }
    names.push_back(entry.get<std::string>());
  }
  return names;
}

void require_unique(const std::vector<std::string>& names,
                    const std::string& what) {
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    fail(what + " contains duplicate name '" + *dup + "'");
  }
}

std::vector<std::string> alphabet_at(const ordered_json& j) {
  std::vector<std::string> alphabet = names_at(j, "alphabet");
  for (const std::string& sym : alphabet) {
    if (sym.empty()) {
      fail("alphabet symbols must be nonempty");
    }
    if (sym == "#" || sym == "$") {
      fail("alphabet symbol '" + sym + "' is reserved for the markers");
    }
  }
  require_unique(alphabet, "alphabet");
  return alphabet;
}

Index index_of(const std::string& name,
               const std::vector<std::string>& states,
               const std::string& what) {
  const auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) {
    fail(what + " references unknown state '" + name + "'");
  }
  return static_cast<Index>(it - states.begin());
}

std::vector<Index> indices_at(const ordered_json& j,
                              const std::vector<std::string>& states,
                              const std::string& what) {
  std::vector<Index> out;
  for (const std::string& name : names_at(j, what)) {
    out.push_back(index_of(name, states, what));
  }
  return out;
}

int symbol_index(const std::string& key,
                 const std::vector<std::string>& alphabet) {
  const auto it = std::find(alphabet.begin(), alphabet.end(), key);
  return it == alphabet.end() ? -1 : static_cast<int>(it - alphabet.begin());
}

MM1QFA parse_mm(const ordered_json& j) {
  MM1QFA a;
  a.alphabet = alphabet_at(field(j, "alphabet"));
  a.states = names_at(field(j, "states"), "states");
  require_unique(a.states, "states");
  a.accepting = indices_at(field(j, "accepting"), a.states, "accepting");
  a.rejecting = indices_at(field(j, "rejecting"), a.states, "rejecting");
  a.initial = vector_at(field(j, "initial"), "initial");
  const ordered_json& transitions = field(j, "transitions");
  if (!transitions.is_object()) {
    fail("'transitions' must be an object keyed by symbol");
  }
  a.unitary.assign(a.alphabet.size(), Matrix());
  for (const auto& [key, value] : transitions.items()) {
    const std::string what = "transition matrix for '" + key + "'";
    if (key == "$") {
      a.end_unitary = matrix_at(value, what);
      continue;
    }
    const int x = symbol_index(key, a.alphabet);
    if (x < 0) {
      fail("transition symbol '" + key + "' is not in the alphabet");
    }
    a.unitary[static_cast<std::size_t>(x)] = matrix_at(value, what);
  }
  return a;
}

Superoperator superop_at(const ordered_json& j, const std::string& what) {
  if (!j.is_array()) {
    fail(what + " must be an array of Kraus matrices");
  }
  Superoperator s;
  s.kraus.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    s.kraus.push_back(matrix_at(j[i], what + " operator"));
  }
  return s;
}

E1QFA parse_e(const ordered_json& j) {
  E1QFA a;
  a.alphabet = alphabet_at(field(j, "alphabet"));
  a.states = names_at(field(j, "states"), "states");
  require_unique(a.states, "states");
  a.accepting = indices_at(field(j, "accepting"), a.states, "accepting");
  a.rejecting = indices_at(field(j, "rejecting"), a.states, "rejecting");
  const ordered_json& initial = field(j, "initial_state");
  if (!initial.is_string()) {
    fail("'initial_state' must be a state name");
  }
  a.initial_state =
      index_of(initial.get<std::string>(), a.states, "initial_state");
  const ordered_json& superops = field(j, "superoperators");
  if (!superops.is_object()) {
    fail("'superoperators' must be an object keyed by symbol");
  }
  a.superops.assign(a.alphabet.size(), Superoperator{});
  for (const auto& [key, value] : superops.items()) {
    const std::string what = "superoperator for '" + key + "'";
    if (key == "#") {
      a.head_superop = superop_at(value, what);
      continue;
    }
    if (key == "$") {
      a.end_superop = superop_at(value, what);
      continue;
    }
    const int x = symbol_index(key, a.alphabet);
    if (x < 0) {
      fail("superoperator symbol '" + key + "' is not in the alphabet");
    }
    a.superops[static_cast<std::size_t>(x)] = superop_at(value, what);
  }
  return a;
}

ordered_json dump_complex(Complex c) {
  return ordered_json::array({c.real(), c.imag()});
}

ordered_json dump_vector(const Vector& v) {
  ordered_json out = ordered_json::array();
  for (Index i = 0; i < v.size(); ++i) {
    out.push_back(dump_complex(v(i)));
  }
  return out;
}

ordered_json dump_matrix(const Matrix& m) {
  ordered_json out = ordered_json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      row.push_back(dump_complex(m(r, c)));
    }
    out.push_back(row);
  }
  return out;
}

ordered_json dump_names(const std::vector<Index>& indices,
                        const std::vector<std::string>& states) {
  ordered_json out = ordered_json::array();
  for (Index q : indices) {
    out.push_back(states[static_cast<std::size_t>(q)]);
  }
  return out;
}

}  // namespace

Automaton parse_automaton(const std::string& json_text, double tol_valid) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    fail("top level must be an object");
  }
  const ordered_json& model = field(j, "model");
  if (!model.is_string()) {
    fail("'model' must be a string");
  }
  const std::string kind = model.get<std::string>();
  if (kind == "mm1qfa") {
    MM1QFA a = parse_mm(j);
    if (auto err = validate_mm(a, tol_valid)) {
      throw ValidationFailure(*err);
    }
    return a;
  }
  if (kind == "e1qfa") {
    E1QFA a = parse_e(j);
    if (auto err = validate_e(a, tol_valid)) {
      throw ValidationFailure(*err);
    }
    return a;
  }
  fail("unknown model '" + kind + "'");
}

Automaton load_automaton(const std::string& path, double tol_valid) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail("cannot read file '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) {
    fail("cannot read file '" + path + "'");
  }
  return parse_automaton(text.str(), tol_valid);
}

std::string serialize_automaton(const MM1QFA& a) {
  ordered_json j;
  j["model"] = "mm1qfa";
  j["alphabet"] = a.alphabet;
  j["states"] = a.states;
  j["accepting"] = dump_names(a.accepting, a.states);
  j["rejecting"] = dump_names(a.rejecting, a.states);
  j["initial"] = dump_vector(a.initial);
  ordered_json transitions = ordered_json::object();
  for (std::size_t x = 0; x < a.alphabet.size(); ++x) {
    transitions[a.alphabet[x]] = dump_matrix(a.unitary[x]);
  }
  transitions["$"] = dump_matrix(a.end_unitary);
  j["transitions"] = std::move(transitions);
  return j.dump(2) + "\n";
}

std::string serialize_automaton(const E1QFA& a) {
  if (!a.initial_state) {
    throw std::logic_error("cannot serialize an automaton without an initial state");
  }
  ordered_json j;
  j["model"] = "e1qfa";
  j["alphabet"] = a.alphabet;
  j["states"] = a.states;
  j["accepting"] = dump_names(a.accepting, a.states);
  j["rejecting"] = dump_names(a.rejecting, a.states);
  j["initial_state"] = a.states[static_cast<std::size_t>(*a.initial_state)];
  ordered_json superops = ordered_json::object();
  auto dump_superop = [](const Superoperator& s) {
    ordered_json out = ordered_json::array();
    for (const Matrix& m : s.kraus) {
      out.push_back(dump_matrix(m));
    }
    return out;
  };
  for (std::size_t x = 0; x < a.alphabet.size(); ++x) {
    superops[a.alphabet[x]] = dump_superop(a.superops[x]);
  }
  superops["#"] = dump_superop(a.head_superop);
  superops["$"] = dump_superop(a.end_superop);
  j["superoperators"] = std::move(superops);
  return j.dump(2) + "\n";
}

std::string serialize_automaton(const Automaton& a) {
  return std::visit(
      [](const auto& inner) { return serialize_automaton(inner); }, a);
}

void save_automaton(const Automaton& a, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail("cannot write file '" + path + "'");
  }
  out << serialize_automaton(a);
  if (!out) {
    fail("cannot write file '" + path + "'");
  }
}

const std::vector<std::string>& automaton_alphabet(const Automaton& a) {
  return std::visit(
      [](const auto& inner) -> const std::vector<std::string>& {
        return inner.alphabet;
      },
      a);
}

Word parse_word(const std::string& text,
                const std::vector<std::string>& alphabet) {
  Word word;
  if (text.empty()) {
    return word;
  }
  auto lookup = [&alphabet](const std::string& name) {
    const int x = symbol_index(name, alphabet);
    if (x < 0) {
      throw UnknownSymbol("symbol '" + name + "' is not in the alphabet");
    }
    return x;
  };
  if (text.find(',') != std::string::npos) {
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
      word.push_back(lookup(token));
    }
    return word;
  }
  const bool single_char =
      std::all_of(alphabet.begin(), alphabet.end(),
                  [](const std::string& s) { return s.size() == 1; });
  if (single_char) {
    for (char c : text) {
      word.push_back(lookup(std::string(1, c)));
    }
    return word;
  }
  word.push_back(lookup(text));
  return word;
}

std::string format_word(const Word& w,
                        const std::vector<std::string>& alphabet,
                        const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) {
      out += sep;
    }
    out += alphabet.at(static_cast<std::size_t>(w[i]));
  }
  return out;
}

}  // namespace qfa
