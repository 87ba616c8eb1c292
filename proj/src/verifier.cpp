#include "treedeck/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "treedeck/counting.hpp"
#include "treedeck/error.hpp"
#include "treedeck/invariants.hpp"
#include "treedeck/orientation.hpp"
#include "treedeck/structure.hpp"

namespace treedeck {

namespace {

std::string codes_text(const CodeMultiset& m) {
  std::string s;
  for (const auto& [code, c] : m) s += (s.empty() ? "" : " ") + std::to_string(c) + "x" + code.text();
  return s.empty() ? "{}" : s;
}

// Runs body(i) for i in [0, count) over `jobs` threads; i is split by stride.
template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn&& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace

std::pair<Tree, Tree> nydl_pair(int ell) {
  if (ell < 2) throw PreconditionError("the construction needs l >= 2");
  if (2 * ell > 24) throw SizeLimitError("l = " + std::to_string(ell) + " gives trees above 24 vertices");
  const Tree base = path_tree(2 * ell - 1);
  return {attach_leaves(base, ell - 1, 1), attach_leaves(base, ell - 2, 1)};
}

std::string search_class_name(SearchClass c) { return c == SearchClass::kTrees ? "trees" : "all-graphs"; }

CollisionReport collision_search(int n, int ell, SearchClass searched, int jobs) {
  const auto start = std::chrono::steady_clock::now();
  if (searched == SearchClass::kTrees && (n < 1 || n > kMaxEnumerationVertices)) {
    throw SizeLimitError("tree search supports 1 <= n <= " + std::to_string(kMaxEnumerationVertices));
  }
  if (searched == SearchClass::kAllGraphs && (n < 1 || n > kMaxAllGraphsVertices)) {
    throw SizeLimitError("all-graphs search supports 1 <= n <= " + std::to_string(kMaxAllGraphsVertices));
  }
  if (ell < 0 || ell >= n) throw PreconditionError("need 0 <= l < n");

  std::vector<SmallGraph> members;
  if (searched == SearchClass::kTrees) {
    for (const Tree& t : enumerate_free_trees(n)) members.push_back(t.graph());
  } else {
    members = enumerate_all_graphs(n);
  }
  const int m = n - ell;
  std::vector<std::uint64_t> prints(members.size());
  parallel_for(members.size(), jobs, [&](std::size_t i) { prints[i] = deck_fingerprint(compute_deck(members[i], m)); });

  CollisionReport rep;
  rep.n = n;
  rep.ell = ell;
  rep.searched = searched;
  rep.examined = members.size();
  rep.decks_computed = members.size();

  std::map<std::uint64_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < members.size(); ++i) groups[prints[i]].push_back(i);
  for (const auto& [fp, idx] : groups) {
    if (idx.size() < 2) continue;
    // Confirm: split the fingerprint group by full deck equality.
    std::vector<std::pair<Deck, std::vector<CanonCode>>> parts;
    for (std::size_t i : idx) {
      Deck d = compute_deck(members[i], m);
      ++rep.decks_computed;
      auto it = std::find_if(parts.begin(), parts.end(), [&](const auto& p) { return decks_equal(p.first, d); });
      if (it == parts.end()) {
        parts.emplace_back(std::move(d), std::vector<CanonCode>{});
        it = parts.end() - 1;
      }
      it->second.push_back(canonical_code(members[i]));
    }
    for (auto& [deck, codes] : parts) {
      if (codes.size() < 2) continue;
      std::sort(codes.begin(), codes.end());
      rep.classes.push_back({std::move(codes), std::move(deck)});
    }
  }
  std::sort(rep.classes.begin(), rep.classes.end(),
            [](const CollisionClass& a, const CollisionClass& b) { return a.members < b.members; });
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string collision_report_text(const CollisionReport& rep) {
  std::ostringstream os;
  os << "collision_search n=" << rep.n << " ell=" << rep.ell << " class=" << search_class_name(rep.searched) << "\n";
  os << "examined: " << rep.examined << "\n";
  os << "decks_computed: " << rep.decks_computed << "\n";
  os << "collision_classes: " << rep.classes.size() << "\n";
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    os << "class " << i + 1 << ": " << rep.classes[i].members.size() << " members\n";
    for (const CanonCode& c : rep.classes[i].members) os << "  " << c.text() << "\n";
  }
  return os.str();
}

std::string collision_report_json(const CollisionReport& rep) {
  std::string out;
  for (const CollisionClass& c : rep.classes) {
    nlohmann::ordered_json j;
    j["n"] = rep.n;
    j["ell"] = rep.ell;
    j["class"] = search_class_name(rep.searched);
    j["members"] = nlohmann::json::array();
    for (const CanonCode& m : c.members) j["members"].push_back(m.text());
    j["deck"] = deck_to_text(c.deck);
    out += j.dump() + "\n";
  }
  return out;
}

int default_threshold_start(int ell) {
  if (ell == 1) return 3;
  if (ell == 2) return 6;
  return 2 * ell + 1;
}

bool ThresholdReport::all_empty() const {
  return std::all_of(rows.begin(), rows.end(), [](const CollisionReport& r) { return r.classes.empty(); });
}

ThresholdReport threshold_check(int ell, int n_min, int n_max, int jobs) {
  if (n_min > n_max) throw PreconditionError("empty range");
  if (n_min <= ell) throw PreconditionError("need n > l");
  if (n_max > kMaxEnumerationVertices) {
    throw SizeLimitError("tree search supports n <= " + std::to_string(kMaxEnumerationVertices));
  }
  ThresholdReport rep;
  rep.ell = ell;
  for (int n = n_min; n <= n_max; ++n) rep.rows.push_back(collision_search(n, ell, SearchClass::kTrees, jobs));
  return rep;
}

std::string threshold_report_text(const ThresholdReport& rep) {
  std::ostringstream os;
  os << "thresholds ell=" << rep.ell;
  if (!rep.rows.empty()) os << " n=" << rep.rows.front().n << ".." << rep.rows.back().n;
  os << "\n";
  for (const CollisionReport& r : rep.rows) {
    os << "n=" << r.n << " trees=" << r.examined << " collision_classes=" << r.classes.size() << "\n";
    for (const CollisionClass& c : r.classes) {
      os << "  class:";
      for (const CanonCode& m : c.members) os << " " << m.text();
      os << "\n";
    }
  }
  os << "result: " << (rep.all_empty() ? "all empty" : "COLLISIONS FOUND") << "\n";
  return os.str();
}

void PropertyLedger::fail(const std::string& name, const std::string& instance) {
  Entry& e = entries_[name];
  ++e.failed;
  if (e.failures.size() < kKeptFailures) e.failures.push_back(instance);
}

void PropertyLedger::merge(const PropertyLedger& other) {
  for (const auto& [name, o] : other.entries_) {
    Entry& e = entries_[name];
    e.passed += o.passed;
    e.failed += o.failed;
    e.skipped += o.skipped;
    for (const std::string& f : o.failures) {
      if (e.failures.size() < kKeptFailures) e.failures.push_back(f);
    }
  }
}

std::uint64_t PropertyLedger::total_failed() const {
  std::uint64_t s = 0;
  for (const auto& [name, e] : entries_) s += e.failed;
  return s;
}

std::uint64_t PropertyLedger::total_passed() const {
  std::uint64_t s = 0;
  for (const auto& [name, e] : entries_) s += e.passed;
  return s;
}

std::string PropertyLedger::to_text() const {
  std::ostringstream os;
  for (const auto& [name, e] : entries_) {
    os << (e.failed ? "FAIL " : "ok   ") << name << ": passed " << e.passed << ", failed " << e.failed
       << ", skipped " << e.skipped << "\n";
    for (const std::string& f : e.failures) os << "  failing instance: " << f << "\n";
  }
  return os.str();
}

std::string instance_text(const Tree& t, int ell) {
  std::string s = "l=" + std::to_string(ell) + " tree=" + std::to_string(t.order()) + ";";
  bool first = true;
  for (const Edge& e : t.edges()) {
    s += (first ? "" : ",") + std::to_string(e.u) + "-" + std::to_string(e.v);
    first = false;
  }
  return s;
}

void check_recognizers(const Tree& t, int ell, PropertyLedger& out) {
  const int n = t.order();
  const int m = n - ell;
  const std::string inst = instance_text(t, ell);
  if (ell < 1 || m < 2) {
    out.skip("recognizers");
    return;
  }
  DeckAnalysis a(compute_deck(t, m));
  // Each recognizer runs guarded: an unexpected exception is a failure.
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const HypothesisError&) {
      out.skip(name);
    } catch (const std::exception& e) {
      out.fail(name, inst + " threw: " + e.what());
    }
  };
  guarded("edge_count", [&] {
    out.check("edge_count", edge_count_from_deck(a) == static_cast<std::uint64_t>(n - 1), inst);
  });
  std::optional<int> k;
  guarded("recognize_k", [&] {
    k = a.k();
    const std::optional<int> want = oracle_k(t, ell);
    out.check("recognize_k", k == want, inst);
  });
  guarded("recognize_r", [&] {
    const RResult r = recognize_r(a);
    out.check("recognize_r", r.r == oracle_r(t), inst + " got " + std::to_string(r.r));
  });
  if (n >= 2 * ell + 3) {
    guarded("degree_list", [&] { out.check("degree_list", recognize_degree_list(a) == oracle_degree_list(t), inst); });
  } else {
    out.skip("degree_list");
  }
  if (k) {
    for (int j = 1; j <= *k; ++j) {
      guarded("maximal_vines", [&] {
        const CodeMultiset& got = a.maximal_vines(j);
        out.check("maximal_vines", got == oracle_maximal_vines(t, j),
                  inst + " j=" + std::to_string(j) + " got " + codes_text(got));
      });
      guarded("maximal_evines", [&] {
        const CodeMultiset& got = a.maximal_evines(j);
        out.check("maximal_evines", got == oracle_maximal_evines(t, j),
                  inst + " j=" + std::to_string(j) + " got " + codes_text(got));
      });
    }
  } else {
    out.skip("maximal_vines");
    out.skip("maximal_evines");
  }
  if (k && *k >= ell + 1) {
    guarded("spi_count", [&] {
      out.check("spi_count", recognize_spi_count(a) == oracle_spi_centers(t, ell).size(), inst);
    });
  } else {
    out.skip("spi_count");
  }
}

void check_structure(const Tree& t, int ell, PropertyLedger& out) {
  const std::string inst = instance_text(t, ell);
  try {
    for (const PropertyCheck& c : check_structural_properties(t, ell)) {
      const std::string name = "structure/" + c.name;
      if (!c.applicable) {
        out.skip(name);
      } else {
        out.check(name, c.holds, inst + " " + c.detail);
      }
    }
  } catch (const std::exception& e) {
    out.fail("structure", inst + " threw: " + e.what());
  }
}

void check_counting(const Tree& t, int ell, PropertyLedger& out) {
  const int n = t.order();
  const int m = n - ell;
  const std::string inst = instance_text(t, ell);
  if (ell < 1 || m < 2) {
    out.skip("counting/maximal_vines");
    return;
  }
  const std::optional<int> k = oracle_k(t, ell);
  if (!k) {
    out.skip("counting/maximal_vines");
    out.skip("counting/maximal_evines");
    return;
  }
  // Connected induced copies per class, straight from the tree.
  std::map<CanonCode, std::uint64_t> copies;
  for_each_connected_subset(t.graph(), n, [&](VertexMask s) { ++copies[canonical_code(t.graph(), s)]; });
  for (int j = 1; j <= *k; ++j) {
    for (const bool evine : {false, true}) {
      const std::string name = evine ? "counting/maximal_evines" : "counting/maximal_vines";
      try {
        FamilyCounts fc;
        for (const auto& [code, c] : copies) {
          if (code_diameter(code) != 2 * j + (evine ? 1 : 0)) continue;
          fc.family.push_back(code);
          if (code_order(code) >= m) {
            fc.known_m[code] = 0;
          } else {
            fc.s_counts[code] = c;
          }
        }
        const CodeMultiset got = positive_part(solve_maximal_counts(fc));
        const CodeMultiset want = evine ? oracle_maximal_evines(t, j) : oracle_maximal_vines(t, j);
        out.check(name, got == want, inst + " j=" + std::to_string(j) + " got " + codes_text(got));
      } catch (const std::exception& e) {
        out.fail(name, inst + " threw: " + e.what());
      }
    }
  }
}

void check_orientation(const Tree& t, int ell, PropertyLedger& out, EvinePairProperty* pairs) {
  const std::string inst = instance_text(t, ell);
  if (ell < 1 || t.order() - ell < 2 || !orientation_local_hypotheses(t, ell)) {
    out.skip("orientation");
    return;
  }
  const Deck d = compute_deck(t, t.order() - ell);
  auto verify = [&](const std::string& name, bool global) {
    try {
      const OrientationReport rep = orient_from_deck(d, global);
      bool ok = result_trunk_pieces(rep.pieces, rep.result) == oracle_trunk_pieces(t, rep.k);
      for (std::size_t i = 0; i < 2; ++i) {
        const TerminalVine& u = rep.pieces.u[i];
        ok = ok && ((rep.result.vines[i].side == TrunkSide::kSymmetricEither) == (u.a == u.b));
      }
      out.check(name, ok, inst);
      if (pairs && !global) {
        for (const EvineQuad& q : harvest_evine_quads(t, rep.k - 1)) pairs->add(rep.k - 1, q);
      }
    } catch (const std::exception& e) {
      out.fail(name, inst + " threw: " + e.what());
    }
  };
  verify("orientation", false);
  if (orientation_global_hypotheses(t, ell)) {
    verify("orientation/global", true);
  } else {
    out.skip("orientation/global");
  }
}

void check_kelly(const Tree& t, int ell, PropertyLedger& out) {
  const int m = t.order() - ell;
  if (m < 2) {
    out.skip("kelly_identity");
    return;
  }
  const std::string inst = instance_text(t, ell);
  try {
    out.check("kelly_identity", decks_equal(derive_subdeck(compute_deck(t, m)), compute_deck(t, m - 1)), inst);
  } catch (const std::exception& e) {
    out.fail("kelly_identity", inst + " threw: " + e.what());
  }
}

void check_exclusion_round_trip(Rng& rng, PropertyLedger& out) {
  const int budget = rng.between(1, 12);
  std::vector<RootedTree> offshoots;
  int used = 0;
  while (used < budget) {
    const int size = rng.between(1, budget - used);
    const Tree t = random_tree(size, rng);
    offshoots.emplace_back(t, rng.between(0, size - 1));
    used += size;
    if (rng.below(3) == 0) break;
  }
  int top = 0;
  for (const RootedTree& o : offshoots) top = std::max(top, o.order());
  std::vector<RootedTree> largest;
  RootedMultiset truth;
  RootedMultiset subtrees;
  for (const RootedTree& o : offshoots) {
    ++truth[rooted_canonical_code(o)];
    if (o.order() == top) largest.push_back(o);
    for (const auto& [code, c] : rooted_subtree_multiset(o)) subtrees[code] += c;
  }
  std::string inst = "offshoots:";
  for (const auto& [code, c] : truth) inst += " " + std::to_string(c) + "x" + code.text();
  try {
    out.check("exclusion_round_trip", exclusion_recover(subtrees, largest) == truth, inst);
  } catch (const std::exception& e) {
    out.fail("exclusion_round_trip", inst + " threw: " + e.what());
  }
}

SuiteReport invariant_suite(const SuiteOptions& opt) {
  if (opt.n_min < 1 || opt.n_min > opt.n_max || opt.n_max > kMaxEnumerationVertices) {
    throw PreconditionError("suite needs 1 <= n_min <= n_max <= " + std::to_string(kMaxEnumerationVertices));
  }
  if (opt.ell_min < 1 || opt.ell_min > opt.ell_max) throw PreconditionError("suite needs 1 <= ell_min <= ell_max");
  if (opt.trials < 0) throw PreconditionError("trials must be non-negative");
  SuiteReport rep;
  rep.options = opt;
  PropertyLedger& out = rep.ledger;
  Rng rng(opt.seed);
  EvinePairProperty pairs;
  for (int trial = 0; trial < opt.trials; ++trial) {
    const Tree t = random_tree(rng.between(opt.n_min, opt.n_max), rng);
    const int ell = rng.between(opt.ell_min, opt.ell_max);
    if (ell >= t.order() - 1) {
      out.skip("recognizers");
      continue;
    }
    check_recognizers(t, ell, out);
    check_structure(t, ell, out);
    if (t.order() <= 14) check_counting(t, ell, out);
    check_orientation(t, ell, out, &pairs);
    check_kelly(t, ell, out);
    check_exclusion_round_trip(rng, out);
  }
  const auto [premises, bad] = pairs.check();
  out.check("evine_pair_property", bad.empty(), std::to_string(bad.size()) + " violating evines");

  // Degenerate trees: reports come back with "not computable" fields.
  for (const int n : {1, 2}) {
    const Tree t = path_tree(n);
    try {
      const std::string text = report_to_text(analyze_deck(compute_deck(t, 1)));
      out.check("degenerate_inputs", text.find("n: " + std::to_string(n)) == 0, instance_text(t, n - 1));
    } catch (const std::exception& e) {
      out.fail("degenerate_inputs", instance_text(t, n - 1) + " threw: " + e.what());
    }
  }
  // A tampered deck must be rejected by the derivation.
  {
    const Tree t = random_tree(std::max(opt.n_min, 4), rng);
    const Deck d = compute_deck(t, t.order() - 1);
    CodeMultiset cards = d.cards();
    ++cards.begin()->second;
    bool caught = false;
    try {
      derive_subdeck(Deck(d.n(), d.card_size(), cards));
    } catch (const InconsistentError&) {
      caught = true;
    }
    out.check("tampered_deck_rejected", caught, instance_text(t, 1));
  }
  return rep;
}

std::string suite_report_text(const SuiteReport& rep) {
  std::ostringstream os;
  const SuiteOptions& o = rep.options;
  os << "suite seed=" << o.seed << " trials=" << o.trials << " n=" << o.n_min << ".." << o.n_max
     << " ell=" << o.ell_min << ".." << o.ell_max << "\n";
  os << rep.ledger.to_text();
  os << "result: " << (rep.ledger.total_failed() == 0 ? "PASS" : "FAIL") << " (" << rep.ledger.total_passed()
     << " passed, " << rep.ledger.total_failed() << " failed)\n";
  return os.str();
}

}  // namespace treedeck
