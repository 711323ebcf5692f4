#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qfa/e1qfa.hpp"
#include "qfa/mm1qfa.hpp"

namespace qfa {

using Automaton = std::variant<MM1QFA, E1QFA>;

// Parses and validates an automaton from JSON text. Structural problems
// (bad JSON, missing fields, unknown names, reserved symbols in the
// alphabet) raise ParseError; a well-formed but invalid model raises
// ValidationFailure.
Automaton parse_automaton(const std::string& json_text,
                          double tol_valid = kDefaultTolValid);

// parse_automaton over a file's contents; unreadable files raise ParseError.
Automaton load_automaton(const std::string& path,
                         double tol_valid = kDefaultTolValid);

// Canonical JSON with a fixed field order and entry layout, so serializing,
// parsing and serializing again reproduces the bytes exactly.
std::string serialize_automaton(const MM1QFA& a);
std::string serialize_automaton(const E1QFA& a);
std::string serialize_automaton(const Automaton& a);

void save_automaton(const Automaton& a, const std::string& path);

const std::vector<std::string>& automaton_alphabet(const Automaton& a);

// Word from text: comma-separated symbol names, or one symbol per character
// when the text has no comma and every alphabet symbol is a single
// character. Empty text is the empty word.
Word parse_word(const std::string& text,
                const std::vector<std::string>& alphabet);

std::string format_word(const Word& w,
                        const std::vector<std::string>& alphabet,
                        const std::string& sep = "");

}  // namespace qfa
