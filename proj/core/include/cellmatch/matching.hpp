#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cellmatch/cell_complex.hpp"

namespace cellmatch {

/// A set of incident cell pairs relative to a base subcomplex Y.
///
/// Pairs are stored as (face, coface) when built by the library and kept
/// sorted lexicographically; pairs read from files may come in either order.
class Matching {
 public:
  using Pair = std::pair<CellId, CellId>;

  Matching() = default;
  Matching(std::vector<Pair> pairs, std::vector<CellId> relative_to);

  const std::vector<Pair>& pairs() const { return pairs_; }
  const std::vector<CellId>& relative_to() const { return relative_to_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  void set_relative_to(std::vector<CellId> ids);
  /// Cell -> partner.
  std::map<CellId, CellId> mates() const;
  std::optional<CellId> mate_of(const CellId& cell) const;
  bool contains_pair(const CellId& a, const CellId& b) const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<Pair> pairs_;
  std::vector<CellId> relative_to_;
};

/// Bipartite incidence relation on Σ(X,Y): even side against odd side.
struct IncidenceGraph {
  std::vector<CellIndex> even;
  std::vector<CellIndex> odd;
  /// For every cell of Σ(X,Y), its incident cells in Σ(X,Y), ascending.
  std::map<CellIndex, std::vector<CellIndex>> adjacency;

  /// Number of unordered incident pairs.
  std::size_t edge_count() const;
  /// I(A): cells related to at least one member of A.
  std::vector<CellIndex> neighborhood(const std::vector<CellIndex>& a) const;
};

enum class Side { even, odd };

/// A witness that Hall's condition fails: |A| > |I(A)|.
struct HallCertificate {
  Side side = Side::even;
  std::vector<CellId> a;
  std::vector<CellId> neighborhood;

  long deficiency() const {
    return static_cast<long>(a.size()) - static_cast<long>(neighborhood.size());
  }
  friend bool operator==(const HallCertificate&, const HallCertificate&) = default;
};

using MatchOutcome = std::variant<Matching, HallCertificate>;

struct OrbitReport {
  enum class Kind { acyclic, cyclic };
  Kind kind = Kind::acyclic;
  /// Acyclic: pairs (free face, its coface) in removal order.
  std::vector<Matching::Pair> collapse_order;
  /// Cyclic: σ0, σ1, ..., alternating dimensions d, d+1, closing up at σ0.
  std::vector<CellId> orbit;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

struct Enumeration {
  std::uint64_t count = 0;
  std::vector<Matching> matchings;  ///< at most `limit` of them
};

inline constexpr std::size_t default_enumeration_bound = 40;

IncidenceGraph incidence_graph(const SubcomplexPair& pair);

/// Maximum bipartite matching (Hopcroft-Karp) on Σ(X,Y). A perfect result is
/// returned as a Matching, otherwise a König certificate is extracted from
/// the alternating-path closure of the unmatched cells of one side: the
/// larger side when the sides differ in size, the even side when they agree.
MatchOutcome complete_matching(const SubcomplexPair& pair);

/// Recomputes I(A) from the complex and checks it against the certificate.
bool verify_certificate(const SubcomplexPair& pair, const HallCertificate& cert);

ValidationReport validate_matching(const SubcomplexPair& pair, const Matching& m);

/// Exact count of complete matchings by backtracking (the lowest unmatched
/// cell is always matched next), with the first `limit` matchings retained.
Enumeration enumerate_matchings(const SubcomplexPair& pair, std::size_t limit = 16,
                                std::size_t bound = default_enumeration_bound);

/// The two matchings of the 2k loop cells: orientation 0 pairs ηi with ci,
/// orientation 1 pairs ηi with c(i+1). Relative to complement_of_dual_loop.
Matching match_dual_cycle(const ComplexPtr& complex, const DualLoop& loop, int orientation);

OrbitReport orbit_analysis(const SubcomplexPair& pair, const Matching& m);

/// Replays a collapse order on the pair; true iff every step removes a free
/// face with its unique remaining coface and Σ(X,Y) ends up empty.
bool replay_collapse(const SubcomplexPair& pair, const std::vector<Matching::Pair>& order);

/// Union of matchings with pairwise disjoint coverage. The relative base is
/// left empty for the caller to set.
Matching compose_matchings(const std::vector<Matching>& parts);

}  // namespace cellmatch
