#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "treedeck/canon.hpp"
#include "treedeck/deck.hpp"
#include "treedeck/enumerate.hpp"
#include "treedeck/graph.hpp"

namespace treedeck {

class EvinePairProperty;

/// P_{2l-1} on vertices 0..2l-2 plus a leaf at the central vertex l-1, and
/// plus a leaf at its neighbor l-2. Both have the same l-deck.
std::pair<Tree, Tree> nydl_pair(int ell);

enum class SearchClass { kTrees, kAllGraphs };

std::string search_class_name(SearchClass c);

struct CollisionClass {
  std::vector<CanonCode> members;  // sorted, >= 2
  Deck deck;                       // the shared deck
};

struct CollisionReport {
  int n = 0;
  int ell = 0;
  SearchClass searched = SearchClass::kTrees;
  std::vector<CollisionClass> classes;  // sorted by first member
  std::uint64_t examined = 0;
  std::uint64_t decks_computed = 0;  // including confirmation recomputes
  double wall_seconds = 0;           // not part of the text/JSON output
};

/// Groups every member of the class by its (n-l)-deck and keeps the groups
/// with >= 2 members. Grouping is by deck fingerprint; each fingerprint
/// group is confirmed by recomputing and comparing the members' full decks.
/// Output does not depend on `jobs`.
CollisionReport collision_search(int n, int ell, SearchClass searched, int jobs = 1);

/// Line-oriented summary; byte-stable (no timings).
std::string collision_report_text(const CollisionReport& report);
/// One JSON object per line, one line per collision class.
std::string collision_report_json(const CollisionReport& report);

/// Smallest n from which trees are expected to be l-reconstructible:
/// 3 for l = 1, 6 for l = 2, else 2l+1 (known to fail for l = 6).
int default_threshold_start(int ell);

struct ThresholdReport {
  int ell = 0;
  std::vector<CollisionReport> rows;  // one per n
  bool all_empty() const;
};

ThresholdReport threshold_check(int ell, int n_min, int n_max, int jobs = 1);
std::string threshold_report_text(const ThresholdReport& report);

/// Pass/fail bookkeeping for named properties; keeps the first few failing
/// instances of each, serialized.
class PropertyLedger {
 public:
  struct Entry {
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    std::uint64_t skipped = 0;  // hypotheses not met
    std::vector<std::string> failures;
  };

  void pass(const std::string& name) { ++entries_[name].passed; }
  void skip(const std::string& name) { ++entries_[name].skipped; }
  void fail(const std::string& name, const std::string& instance);
  void check(const std::string& name, bool ok, const std::string& instance) {
    ok ? pass(name) : fail(name, instance);
  }
  void merge(const PropertyLedger& other);

  const std::map<std::string, Entry>& entries() const { return entries_; }
  std::uint64_t total_failed() const;
  std::uint64_t total_passed() const;
  std::string to_text() const;

 private:
  static constexpr std::size_t kKeptFailures = 5;
  std::map<std::string, Entry> entries_;
};

/// Serialized instance: "l=<ell> tree=<n>;u-v,u-v,...".
std::string instance_text(const Tree& t, int ell);

// One (tree, l) through each family of checks. Names are stable.

/// recognize_k, recognize_r, degree list, maximal vines/evines (j <= k),
/// spi count, edge count against the tree-side oracles.
void check_recognizers(const Tree& t, int ell, PropertyLedger& out);
/// The structural property checks of the invariants module.
void check_structure(const Tree& t, int ell, PropertyLedger& out);
/// solve_maximal_counts on a family read off the tree itself (classes with
/// >= n-l vertices get m = 0) against the oracle maximal vines/evines.
void check_counting(const Tree& t, int ell, PropertyLedger& out);
/// Orientation from the deck against the trunk pieces read off a longest
/// path; trees outside the local hypotheses are skipped. Harvests evines of
/// depth k-1 into `pairs` when given.
void check_orientation(const Tree& t, int ell, PropertyLedger& out, EvinePairProperty* pairs = nullptr);
/// Derived subdecks equal directly computed decks.
void check_kelly(const Tree& t, int ell, PropertyLedger& out);
/// Exclusion Argument round trip on a random offshoot multiset.
void check_exclusion_round_trip(Rng& rng, PropertyLedger& out);

struct SuiteOptions {
  std::uint64_t seed = 1;
  int trials = 100;
  int n_min = 8;
  int n_max = 14;
  int ell_min = 1;
  int ell_max = 2;
};

struct SuiteReport {
  SuiteOptions options;
  PropertyLedger ledger;
};

/// Random trees (plus degenerate and tampered inputs) through every check.
SuiteReport invariant_suite(const SuiteOptions& options);
std::string suite_report_text(const SuiteReport& report);

}  // namespace treedeck
