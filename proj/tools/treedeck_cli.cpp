// Command-line front end. stdout carries results; diagnostics go to stderr.
// Exit codes: 0 ok, 1 failed assertion (collide/thresholds/suite),
// 2 bad arguments or input, 3 hypotheses not met.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "treedeck/deck.hpp"
#include "treedeck/enumerate.hpp"
#include "treedeck/error.hpp"
#include "treedeck/invariants.hpp"
#include "treedeck/orientation.hpp"
#include "treedeck/verifier.hpp"

using namespace treedeck;

namespace {

constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitHypothesis = 3;

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

// A tree file starts with "n", a deck file with "n m".
bool looks_like_deck(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  std::istringstream first(line);
  long long a = 0;
  long long b = 0;
  return static_cast<bool>(first >> a >> b);
}

// Deck from a deck file, or from a tree file and l.
Deck deck_from_input(const std::string& path, int ell) {
  const std::string text = slurp(path);
  if (looks_like_deck(text)) {
    Deck d = parse_deck(text);
    if (ell >= 0 && d.ell() != ell) {
      throw PreconditionError("deck file has l = " + std::to_string(d.ell()) + ", --ell says " + std::to_string(ell));
    }
    return d;
  }
  if (ell < 0) throw PreconditionError("--ell is required for a tree file");
  const Tree t = parse_tree(text);
  if (ell >= t.order()) throw PreconditionError("need l < n");
  return compute_deck(t, t.order() - ell);
}

struct Options {
  std::string file = "-";
  std::string file_b;
  int cards = -1;
  int ell = -1;
  int n = 0;
  int to = -1;
  int from = -1;
  int jobs = 1;
  bool graphs = false;
  bool json = false;
  bool expect_empty = false;
  bool local_only = false;
  bool trees_out = false;
  int random = 0;
  SuiteOptions suite;
};

int run_deck(const Options& o) {
  const Tree t = parse_tree(slurp(o.file));
  write_deck(std::cout, compute_deck(t, o.cards));
  return 0;
}

int run_derive(const Options& o) {
  const Deck d = parse_deck(slurp(o.file));
  write_deck(std::cout, o.to < 0 ? derive_subdeck(d) : derive_down_to(d, o.to));
  return 0;
}

int run_compare(const Options& o) {
  Deck a;
  Deck b;
  if (o.file_b.empty()) {
    // Both decks from one stream, blank-separated.
    std::istringstream in(slurp(o.file));
    a = read_deck(in);
    b = read_deck(in);
  } else {
    a = parse_deck(slurp(o.file));
    b = parse_deck(slurp(o.file_b));
  }
  if (decks_equal(a, b)) {
    std::cout << "EQUAL\n";
  } else if (const std::optional<CanonCode> c = first_difference(a, b)) {
    std::cout << "DIFFER first=" << c->text() << " (" << a.multiplicity(*c) << " vs " << b.multiplicity(*c) << ")\n";
  } else {
    std::cout << "DIFFER header (" << a.n() << " " << a.card_size() << " vs " << b.n() << " " << b.card_size()
              << ")\n";
  }
  return 0;
}

int run_invariants(const Options& o) {
  std::cout << report_to_text(analyze_deck(deck_from_input(o.file, o.ell)));
  return 0;
}

int run_orient(const Options& o) {
  std::cout << orientation_to_text(orient_from_deck(deck_from_input(o.file, o.ell), !o.local_only));
  return 0;
}

int run_collide(const Options& o) {
  const CollisionReport rep = collision_search(o.n, o.ell, o.graphs ? SearchClass::kAllGraphs : SearchClass::kTrees, o.jobs);
  std::cout << (o.json ? collision_report_json(rep) : collision_report_text(rep));
  std::cerr << "wall time: " << rep.wall_seconds << " s\n";
  if (o.expect_empty && !rep.classes.empty()) {
    std::cerr << "assertion failed: expected no collisions\n";
    return kExitAssertion;
  }
  return 0;
}

int run_thresholds(const Options& o) {
  const int from = o.from < 0 ? default_threshold_start(o.ell) : o.from;
  const ThresholdReport rep = threshold_check(o.ell, from, o.to, o.jobs);
  std::cout << threshold_report_text(rep);
  double wall = 0;
  for (const CollisionReport& r : rep.rows) wall += r.wall_seconds;
  std::cerr << "wall time: " << wall << " s\n";
  return rep.all_empty() ? 0 : kExitAssertion;
}

int run_suite(const Options& o) {
  const SuiteReport rep = invariant_suite(o.suite);
  std::cout << suite_report_text(rep);
  return rep.ledger.total_failed() == 0 ? 0 : kExitAssertion;
}

int run_nydl(const Options& o) {
  const auto [a, b] = nydl_pair(o.ell);
  if (o.trees_out) {
    std::cout << tree_to_text(a) << "\n" << tree_to_text(b);
  } else {
    std::cout << deck_to_text(compute_deck(a, o.ell)) << "\n" << deck_to_text(compute_deck(b, o.ell));
  }
  return 0;
}

int run_gen_trees(const Options& o) {
  std::vector<Tree> trees;
  if (o.random > 0) {
    Rng rng(o.suite.seed);
    std::cout << "# seed " << o.suite.seed << "\n";
    for (int i = 0; i < o.random; ++i) trees.push_back(random_tree(o.n, rng));
  } else {
    trees = enumerate_free_trees(o.n);
  }
  for (std::size_t i = 0; i < trees.size(); ++i) std::cout << (i ? "\n" : "") << tree_to_text(trees[i]);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decks of trees: computation, deck-determined invariants, collision search"};
  app.require_subcommand(1);
  Options o;
  int (*action)(const Options&) = nullptr;
  auto bind = [&](CLI::App* sub, int (*fn)(const Options&)) { sub->callback([&action, fn] { action = fn; }); };

  auto* deck = app.add_subcommand("deck", "Print the m-deck of a tree file");
  deck->add_option("file", o.file, "Tree file ('-' for stdin)")->required();
  deck->add_option("--cards,-m", o.cards, "Card size m")->required()->check(CLI::PositiveNumber);
  bind(deck, run_deck);

  auto* derive = app.add_subcommand("derive", "Derive a smaller deck from a deck file");
  derive->add_option("file", o.file, "Deck file ('-' for stdin)")->required();
  derive->add_option("--to", o.to, "Target card size (default: one less)")->check(CLI::PositiveNumber);
  bind(derive, run_derive);

  auto* compare = app.add_subcommand("compare", "Compare two decks; prints EQUAL or DIFFER");
  compare->add_option("a", o.file, "Deck file ('-' for stdin; alone, reads two decks from it)")->required();
  compare->add_option("b", o.file_b, "Second deck file");
  bind(compare, run_compare);

  auto* inv = app.add_subcommand("invariants", "Invariants recognized from the deck");
  inv->add_option("file", o.file, "Tree file (needs --ell) or deck file")->required();
  inv->add_option("--ell,-l", o.ell, "Number of deleted vertices")->check(CLI::NonNegativeNumber);
  bind(inv, run_invariants);

  auto* orient = app.add_subcommand("orient", "Trunk orientation of the two terminal vines");
  orient->add_option("file", o.file, "Tree file (needs --ell) or deck file")->required();
  orient->add_option("--ell,-l", o.ell, "Number of deleted vertices")->check(CLI::NonNegativeNumber);
  orient->add_flag("--local-only", o.local_only, "Skip the n >= 6l+7, r >= n-3l, no-spi-center checks");
  bind(orient, run_orient);

  auto* collide = app.add_subcommand("collide", "Group a class of graphs by deck");
  collide->add_option("--n", o.n, "Vertices")->required()->check(CLI::PositiveNumber);
  collide->add_option("--ell,-l", o.ell, "Number of deleted vertices")->required()->check(CLI::NonNegativeNumber);
  collide->add_flag("--graphs", o.graphs, "Search all graphs instead of trees (n <= 7)");
  collide->add_flag("--json", o.json, "One JSON record per collision class");
  collide->add_flag("--expect-empty", o.expect_empty, "Exit 1 if any collision is found");
  collide->add_option("--jobs,-j", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  bind(collide, run_collide);

  auto* thr = app.add_subcommand("thresholds", "Assert no tree collisions over a range of n");
  thr->add_option("--ell,-l", o.ell, "Number of deleted vertices")->required()->check(CLI::PositiveNumber);
  thr->add_option("--to", o.to, "Largest n")->required()->check(CLI::PositiveNumber);
  thr->add_option("--from", o.from, "Smallest n (default 3, 6 or 2l+1)")->check(CLI::PositiveNumber);
  thr->add_option("--jobs,-j", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  bind(thr, run_thresholds);

  auto* suite = app.add_subcommand("suite", "Random trees through every recognizer and property check");
  suite->add_option("--seed", o.suite.seed, "RNG seed")->required();
  suite->add_option("--trials", o.suite.trials, "Random trees")->required()->check(CLI::NonNegativeNumber);
  suite->add_option("--n-min", o.suite.n_min, "Smallest tree")->check(CLI::PositiveNumber);
  suite->add_option("--n-max", o.suite.n_max, "Largest tree")->check(CLI::PositiveNumber);
  suite->add_option("--ell-min", o.suite.ell_min, "Smallest l")->check(CLI::PositiveNumber);
  suite->add_option("--ell-max", o.suite.ell_max, "Largest l")->check(CLI::PositiveNumber);
  bind(suite, run_suite);

  auto* nydl = app.add_subcommand("nydl", "The two 2l-vertex trees with equal l-decks (decks, blank-separated)");
  nydl->add_option("--ell,-l", o.ell, "l >= 2")->required();
  nydl->add_flag("--trees", o.trees_out, "Print the trees instead of their decks");
  bind(nydl, run_nydl);

  auto* gen = app.add_subcommand("gen-trees", "All n-vertex trees (or random ones), blank-separated");
  gen->add_option("--n", o.n, "Vertices")->required()->check(CLI::PositiveNumber);
  gen->add_option("--random", o.random, "Emit this many random labeled trees instead")->check(CLI::PositiveNumber);
  gen->add_option("--seed", o.suite.seed, "RNG seed for --random");
  bind(gen, run_gen_trees);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return action(o);
  } catch (const HypothesisError& e) {
    std::cerr << e.what() << "\n";
    return kExitHypothesis;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
