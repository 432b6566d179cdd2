#ifndef PARAFERM_COSET_HPP
#define PARAFERM_COSET_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "paraferm/exactla.hpp"
#include "paraferm/vacuum.hpp"

namespace paraferm::coset {

struct BlockKey {
  int w;
  RootVec charge;
  auto operator<=>(const BlockKey&) const = default;
};

struct GeneratorInfo {
  std::string name;       // e.g. "w(2,0)", "wbar(2,0)", "W3(2,0)"
  RootVec root;
  RootClass cls;
  State vec;
};

struct GeneratorSet {
  std::vector<GeneratorInfo> gens;
  int count() const { return static_cast<int>(gens.size()); }
  auto begin() const { return gens.begin(); }
  auto end() const { return gens.end(); }
};

// Graded dimensions of an iteratively generated subspace.  Dims are exact
// lower bounds; `stabilized` certifies that a full sweep at the working
// cutoff added nothing at the reported weights.
struct ClosureResult {
  std::map<int, int> dims;
  int sweeps = 0;
  bool stabilized = false;
  bool any_truncated = false;   // some contribution had to be skipped
  std::map<int, exactla::Subspace> blocks;   // charge-0 rows per weight
};

struct IdealModel {
  std::map<BlockKey, exactla::Subspace> radical;   // J blocks, w <= report cutoff
  std::map<BlockKey, int> closure_dims;            // J via raw-mode closure
  bool cross_validated = false;
  std::string mismatch;                            // first disagreeing block, if any
  std::map<int, exactla::Subspace> itilde;         // inside block (w,0) coordinates
  std::map<int, int> n_dims, itilde_dims, k_dims, j0_dims;
};

enum class Verdict { VerifiedAtCutoff, Inconclusive, Failed };
std::string verdict_str(Verdict v);

struct WeightRow {
  int w;
  long target;
  long achieved;
  std::string note;
};

struct CheckReport {
  std::string id;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<WeightRow> rows;
  std::string detail;
  double seconds = 0.0;
};

extern const std::vector<std::string> kAllChecks;

// Shared computation context for one (algebra, level, cutoff) configuration.
// Heavy results (commutant bases, generator set, ideal model) are computed
// once and reused across checks.
class Engine {
 public:
  Engine(AlgebraPtr algebra, int level, int report_cutoff, int headroom);
  ~Engine();

  VacuumSpace& space() { return space_; }
  const VacuumSpace& space() const { return space_; }
  int report_cutoff() const { return report_cutoff_; }

  exactla::Subspace charge_block(int w) const;    // full (w, 0) block
  const exactla::Subspace& commutant(int w);      // N_w
  const GeneratorSet& generators();
  const IdealModel& ideals();

  // Closure of charge-0 seeds under their own composite modes (the vacuum
  // is always a member).  Dims reported per weight up to the report cutoff.
  ClosureResult closure_generate(const std::vector<State>& seeds);
  // Same sweep, but seeding from `start` and acting with `action` modes
  // only: an ideal-style closure inside the charge-0 sector.  `tags`, when
  // given, are stable ids for the action vectors so operator matrices can be
  // shared across calls (generator closures reuse the same modes).
  ClosureResult closure_under(const std::vector<State>& action,
                              const std::vector<State>& start,
                              const std::vector<int>* tags = nullptr);
  // Memoized closure_generate over the full GeneratorSet.
  const ClosureResult& generator_closure();
  // Per-block closure under raw modes a(n), a over the whole algebra.
  std::map<BlockKey, int> raw_mode_closure(const State& start, int* sweeps = nullptr);

  // v0 = e_{-theta}(0)^{k+1} e_theta(-1)^{k+1}|0>.
  State ideal_generator_vector() const;
  // Same with theta replaced by an arbitrary even positive root and
  // k_alpha = 2k/<a,a>.
  State ideal_generator_vector_for(const RootVec& alpha) const;
  int level_for(const RootVec& alpha) const;      // k_alpha

  CheckReport verify(const std::string& check_id);

 private:
  CheckReport check_relations();
  CheckReport check_thm_2_1();
  CheckReport check_thm_3_1();
  CheckReport check_thm_4_1();
  CheckReport check_remark_3_2();
  CheckReport check_lemma_4_2();
  CheckReport check_prop_4_3();
  CheckReport check_prop_4_4();

  AlgebraPtr algebra_;
  int level_;
  int report_cutoff_;
  VacuumSpace space_;
  std::map<int, exactla::Subspace> commutant_;
  std::unique_ptr<GeneratorSet> gens_;
  std::unique_ptr<IdealModel> ideals_;
  std::unique_ptr<ClosureResult> gen_closure_;
  struct CompCache;
  std::unique_ptr<CompCache> ccache_;
};

GeneratorSet parafermion_generators(const VacuumSpace& s);
exactla::Subspace commutant_basis(const VacuumSpace& s, int w);
IdealModel compute_ideals(Engine& eng);

}  // namespace paraferm::coset

#endif
