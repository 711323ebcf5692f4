#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfa/equivalence.hpp"
#include "qfa/generate.hpp"
#include "qfa/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotEquivalent = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

constexpr double kEnumerationWarnLimit = 1e7;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool single_char_alphabet(const std::vector<std::string>& alphabet) {
  return std::all_of(alphabet.begin(), alphabet.end(),
                     [](const std::string& s) { return s.size() == 1; });
}

std::string machine_word(const qfa::Word& w,
                         const std::vector<std::string>& alphabet) {
  return qfa::format_word(w, alphabet,
                          single_char_alphabet(alphabet) ? "" : ",");
}

std::string display_word(const qfa::Word& w,
                         const std::vector<std::string>& alphabet) {
  return w.empty() ? "ε" : machine_word(w, alphabet);
}

int run_validate(const std::string& file, double tol_valid) {
  try {
    qfa::load_automaton(file, tol_valid);
  } catch (const qfa::ValidationFailure& e) {
    std::cout << "violation: " << qfa::to_string(e.error.code)
              << (e.error.symbol.empty() ? "" : " [" + e.error.symbol + "]")
              << ": " << e.error.message << "\n";
    return kExitInvalid;
  }
  std::cout << "ok\n";
  return kExitOk;
}

int run_word(const std::string& file, const std::string& word_text,
             double tol_valid) {
  const qfa::Automaton a = qfa::load_automaton(file, tol_valid);
  const std::vector<std::string>& alphabet = qfa::automaton_alphabet(a);
  const qfa::Word word = qfa::parse_word(word_text, alphabet);

  std::vector<std::string> labels;
  if (std::holds_alternative<qfa::E1QFA>(a)) {
    labels.push_back("#");
  }
  for (int x : word) {
    labels.push_back(alphabet[static_cast<std::size_t>(x)]);
  }
  labels.push_back("$");

  const std::vector<double> profile = std::visit(
      [&word](const auto& inner) {
        using T = std::decay_t<decltype(inner)>;
        if constexpr (std::is_same_v<T, qfa::MM1QFA>) {
          return qfa::accept_profile_mm(inner, word);
        } else {
          return qfa::accept_profile_e(inner, word);
        }
      },
      a);

  std::cout << "word: " << display_word(word, alphabet) << "\n";
  std::cout << "probability: " << fmt_double(profile.back()) << "\n";
  std::cout << "steps:\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    std::printf("  %3zu  %-4s  %s\n", i + 1, labels[i].c_str(),
                fmt_double(profile[i]).c_str());
  }
  return kExitOk;
}

struct EquivOptions {
  std::string file1;
  std::string file2;
  std::string method = "closure";
  std::optional<long> max_len;
  double tol_valid = qfa::kDefaultTolValid;
  double tol_eq = qfa::kDefaultTolEq;
  double tol_span = qfa::kDefaultTolSpan;
  bool json = false;
  bool force = false;
};

void print_verdict_json(const qfa::Verdict& verdict,
                        std::optional<std::size_t> basis_size,
                        const std::string& method,
                        const std::vector<std::string>& alphabet) {
  using nlohmann::ordered_json;
  const bool neq = verdict.kind == qfa::Verdict::Kind::NotEquivalent;
  ordered_json out;
  out["equivalent"] = !neq;
  out["counterexample"] =
      neq ? ordered_json(machine_word(verdict.counterexample, alphabet))
          : ordered_json(nullptr);
  out["p1"] = neq ? ordered_json(verdict.p1) : ordered_json(nullptr);
  out["p2"] = neq ? ordered_json(verdict.p2) : ordered_json(nullptr);
  out["basis_size"] = basis_size ? ordered_json(*basis_size)
                                 : ordered_json(nullptr);
  out["method"] = method;
  if (verdict.kind == qfa::Verdict::Kind::BoundedEquivalent) {
    out["bound"] = verdict.bound;
  }
  std::cout << out.dump(2) << "\n";
}

void print_verdict_text(const qfa::Verdict& verdict, long decision_bound,
                        const std::vector<std::string>& alphabet) {
  switch (verdict.kind) {
    case qfa::Verdict::Kind::Equivalent:
      std::cout << "Equivalent\n";
      break;
    case qfa::Verdict::Kind::NotEquivalent:
      std::cout << "NotEquivalent\n";
      std::cout << "counterexample: "
                << display_word(verdict.counterexample, alphabet) << "\n";
      std::cout << "p1: " << fmt_double(verdict.p1) << "\n";
      std::cout << "p2: " << fmt_double(verdict.p2) << "\n";
      break;
    case qfa::Verdict::Kind::BoundedEquivalent:
      std::cout << "BoundedEquivalent\n";
      std::cout << "no mismatch up to length " << verdict.bound
                << " (decision bound " << decision_bound << ")\n";
      break;
  }
}

int run_equiv(const EquivOptions& opt) {
  const qfa::Automaton a1 = qfa::load_automaton(opt.file1, opt.tol_valid);
  const qfa::Automaton a2 = qfa::load_automaton(opt.file2, opt.tol_valid);
  if (a1.index() != a2.index()) {
    std::cerr << "error: cannot compare automata of different model kinds\n";
    return kExitInvalid;
  }
  const std::vector<std::string>& alphabet = qfa::automaton_alphabet(a1);
  const qfa::Tolerances tol{opt.tol_valid, opt.tol_eq, opt.tol_span};

  const auto state_count = [](const qfa::Automaton& a) {
    return std::visit([](const auto& inner) { return inner.state_count(); },
                      a);
  };
  const long bound =
      qfa::decision_bound(state_count(a1), state_count(a2));

  qfa::Verdict verdict;
  std::optional<std::size_t> basis_size;
  if (opt.method == "closure") {
    qfa::Decision decision;
    if (std::holds_alternative<qfa::MM1QFA>(a1)) {
      decision = qfa::decide_mm(std::get<qfa::MM1QFA>(a1),
                                std::get<qfa::MM1QFA>(a2), tol);
    } else {
      decision = qfa::decide_e(std::get<qfa::E1QFA>(a1),
                               std::get<qfa::E1QFA>(a2), tol);
    }
    verdict = decision.verdict;
    basis_size = decision.basis_size;
    std::cerr << "basis size: " << decision.basis_size << "\n";
  } else {
    const long limit = opt.max_len ? *opt.max_len : bound;
    if (limit < 0) {
      std::cerr << "error: --max-len must be nonnegative\n";
      return kExitInvalid;
    }
    const double words = std::pow(static_cast<double>(alphabet.size()),
                                  static_cast<double>(limit));
    if (words > kEnumerationWarnLimit && !opt.force) {
      std::cerr << "warning: enumeration up to length " << limit
                << " covers more than 1e7 words; pass --force to proceed\n";
      return kExitInvalid;
    }
    if (std::holds_alternative<qfa::MM1QFA>(a1)) {
      verdict = qfa::enumerate_equiv(std::get<qfa::MM1QFA>(a1),
                                     std::get<qfa::MM1QFA>(a2), opt.max_len,
                                     opt.tol_eq);
    } else {
      verdict = qfa::enumerate_equiv(std::get<qfa::E1QFA>(a1),
                                     std::get<qfa::E1QFA>(a2), opt.max_len,
                                     opt.tol_eq);
    }
  }

  if (opt.json) {
    print_verdict_json(verdict, basis_size, opt.method, alphabet);
  } else {
    print_verdict_text(verdict, bound, alphabet);
  }
  return verdict.kind == qfa::Verdict::Kind::NotEquivalent
             ? kExitNotEquivalent
             : kExitOk;
}

int run_random(const std::string& model, long states, long symbols,
               long kraus, std::uint64_t seed,
               const std::string& out_path) {
  qfa::Automaton a =
      model == "mm1qfa"
          ? qfa::Automaton(qfa::random_mm(states, static_cast<int>(symbols),
                                          seed))
          : qfa::Automaton(qfa::random_e(states, static_cast<int>(symbols),
                                         static_cast<int>(kraus), seed));
  if (out_path.empty()) {
    std::cout << qfa::serialize_automaton(a);
  } else {
    qfa::save_automaton(a, out_path);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evaluation and equivalence of measure-many and enhanced "
               "one-way quantum finite automata"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand(
      "validate", "check that a model file satisfies its constraints");
  std::string v_file;
  double v_tol_valid = qfa::kDefaultTolValid;
  validate->add_option("file", v_file, "automaton JSON file")->required();
  validate->add_option("--tol-valid", v_tol_valid,
                       "tolerance for unitarity/completeness/norm checks");

  auto* run = app.add_subcommand(
      "run", "acceptance probability of a word, with the per-step profile");
  std::string r_file;
  std::string r_word;
  double r_tol_valid = qfa::kDefaultTolValid;
  run->add_option("file", r_file, "automaton JSON file")->required();
  run->add_option("--word", r_word,
                  "word over the model's alphabet (omit for the empty word)");
  run->add_option("--tol-valid", r_tol_valid, "model validation tolerance");

  auto* equiv =
      app.add_subcommand("equiv", "decide whether two automata accept every "
                                  "word with the same probability");
  EquivOptions eopt;
  equiv->add_option("file1", eopt.file1, "first automaton")->required();
  equiv->add_option("file2", eopt.file2, "second automaton")->required();
  equiv->add_option("--method", eopt.method, "decision procedure")
      ->check(CLI::IsMember({"closure", "enumerate"}))
      ->capture_default_str();
  equiv->add_option("--max-len", eopt.max_len,
                    "enumerate words up to this length only");
  equiv->add_option("--tol-valid", eopt.tol_valid,
                    "model validation tolerance");
  equiv->add_option("--tol-eq", eopt.tol_eq,
                    "probability comparison tolerance");
  equiv->add_option("--tol-span", eopt.tol_span,
                    "span membership tolerance");
  equiv->add_flag("--json", eopt.json, "machine-readable verdict");
  equiv->add_flag("--force", eopt.force,
                  "run enumerations larger than 1e7 words");

  auto* random = app.add_subcommand(
      "random", "generate a random valid automaton (deterministic per seed)");
  std::string g_model = "mm1qfa";
  long g_states = 2;
  long g_symbols = 2;
  long g_kraus = 2;
  std::uint64_t g_seed = 1;
  std::string g_out;
  random->add_option("--model", g_model, "model kind")
      ->check(CLI::IsMember({"mm1qfa", "e1qfa"}))
      ->capture_default_str();
  random->add_option("--states", g_states, "number of states")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  random->add_option("--alphabet,--symbols", g_symbols, "alphabet size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  random->add_option("--kraus", g_kraus,
                     "Kraus operators per superoperator (e1qfa only)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  random->add_option("--seed", g_seed, "generator seed")
      ->capture_default_str();
  random->add_option("--out", g_out, "write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (validate->parsed()) {
      return run_validate(v_file, v_tol_valid);
    }
    if (run->parsed()) {
      return run_word(r_file, r_word, r_tol_valid);
    }
    if (equiv->parsed()) {
      return run_equiv(eopt);
    }
    if (random->parsed()) {
      return run_random(g_model, g_states, g_symbols, g_kraus, g_seed, g_out);
    }
  } catch (const qfa::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const qfa::ValidationFailure& e) {
    std::cerr << "error: invalid model: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const qfa::UnknownSymbol& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const qfa::AlphabetMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const qfa::BoundExceeded& e) {
    std::cerr << "error: " << e.what() << " (try a looser --tol-span)\n";
    return kExitInvalid;
  } catch (const qfa::InvalidShape& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitInvalid;
}
