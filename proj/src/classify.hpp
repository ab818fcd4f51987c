#pragma once

// The classification pipeline: weighted degree of the branch class, the
// non-normality sweep over the Markov topograph (inequality certificates
// cross-checked against the direct displacement oracle), per-surface branch
// case analysis with machine-checkable evidence, and the assembled report
// with the surviving strata and their dimensions.

#include "cover.hpp"
#include "trop.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace octic {

// Weighted degree of the branch curve class: 8abc on P(a^2,b^2,c^2), 8c on
// HP(c) and 8ab on HPpair(a,b) (8 times the product of the Markov numbers
// of the retained singularities).
Int octic_degree(const SurfaceSpec& spec);

// --- non-normality sweep -----------------------------------------------------

// Offsets of the marked cut-parallel curve of one nodal trade against the
// support, measured from the origin of the eigenline pencil.  `full` ranges
// over every support point; `interior` ignores points on the fixed bottom
// line y = 0, which only ever meet the sweeping marked segment at its
// endpoint and therefore cannot halt its inward motion.
struct MarkedOffset {
    size_t cut = 0;
    Vec normal;
    Rat full;
    Rat interior;
};

// One topograph entry: the direct displacement oracle (the pairing b~ of
// the marked curve, non-normal when <= -2) alongside the inequality
// certificate evaluated at the witness point of the governing base word.
struct SweepRecord {
    MutationWord word;
    MarkovTriple triple;
    bool exceptional = false;           // one of the six persistent-normal triples
    std::vector<MarkedOffset> offsets;  // one per branch cut of the traded triangle
    Rat min_interior = 0;               // min over cuts (0 when there are none)
    bool oracle_nonnormal = false;      // min over cuts of interior offsets <= -2
    std::optional<Vec> witness;         // witness point of the governing base word
    bool certificate_holds = false;

    bool agree() const { return oracle_nonnormal == certificate_holds; }
};

// The six triples whose octic double covers can stay normal; exactly these
// admit no certificate.
const std::vector<std::array<Int, 3>>& sweep_exceptions();

// Witness point for the word's governing base word (the first two or three
// letters), when the word is long enough to have one.
std::optional<Vec> sweep_witness(const MutationWord& word);

SweepRecord sweep_word(const MutationWord& word);

struct SweepResult {
    int depth = 0;
    std::vector<SweepRecord> records;           // topograph order
    std::vector<std::array<Int, 3>> survivors;  // triples with no certificate
    // survivors == sweep_exceptions() restricted to the reached depth, and
    // the oracle agrees with the certificate on every record.
    bool consistent = false;
};

// Walk the topograph to the given depth (>= 2) and decide non-normality of
// the generic octic double cover for every triple.  Records are computed in
// parallel when OpenMP is available and `parallel` is set; the result is
// identical either way.
SweepResult nonnormality_sweep(int depth, bool parallel = true);

// Serial reference implementation (bypasses the parallel kernel).
SweepResult nonnormality_sweep_serial(int depth);

// --- per-surface case analysis -----------------------------------------------

// Closed enumeration of the branch case labels.  I..IV select a support
// subset; the letters a..e refine case II by the contact partition of the
// branch curve against the -4 curve ({1,1,1,1}, {2,1,1}, {2,2}, {3,1},
// {4}).
enum class BranchCase { I, IIa, IIb, IIc, IId, IIe, III, IV };

std::string case_str(BranchCase c);
std::optional<BranchCase> parse_case(const std::string& s);

enum class Verdict { NormalLC, NotLogCanonical, NonNormal };

std::string verdict_str(Verdict v);

// A toric boundary curve appearing inside the branch divisor, with its
// multiplicity (>= 2 forces a non-normal double cover).
struct ComponentMult {
    std::string label;
    Int mult;
};

// Outcome of pushing a curve configuration through log resolution and the
// double cover: cyclic chains become quotient singularities of the cover,
// non-chain components are matched against the known dual-graph families
// and their discrepancies are solved exactly.
struct CoverOutcome {
    std::vector<CyclicQuotient> basket;
    std::optional<FamilyMatch> family;
    std::map<std::string, Rat> alpha;  // discrepancies of non-chain components
    std::optional<Rat> min_alpha;
};

CoverOutcome cover_outcome(const CurveGraph& G);

struct CaseVerdict {
    SurfaceSpec surface;
    std::optional<BranchCase> branch_case;  // nullopt: generic support
    std::string support_note;
    Verdict verdict = Verdict::NormalLC;
    std::vector<CyclicQuotient> basket;             // quotient singularities of X
    std::optional<DiscrepancyReport> chain_report;  // exceptional-chain discrepancies
    std::optional<FamilyMatch> cover_family;        // dual graph of the cover singularity
    std::map<std::string, Rat> cover_alpha;
    std::vector<ComponentMult> branch_components;   // boundary curves inside B
    std::string detail;

    std::string label() const;  // e.g. "P:1,2,5 IV"
};

// The support subset realising a case: the generic lattice support minus
// the case's dropped points.  Throws std::invalid_argument for a case label
// the surface does not have.
std::vector<Vec> case_support(const SurfaceSpec& spec, std::optional<BranchCase> c);

// Decide the verdict for the surface and branch case, with evidence.
CaseVerdict classify_surface(const SurfaceSpec& spec,
                             std::optional<BranchCase> c = std::nullopt);

// The case labels analysed for this surface (nullopt entry = generic).
std::vector<std::optional<BranchCase>> surface_cases(const SurfaceSpec& spec);

// Surfaces skipped because every octic on them degenerates an octic on the
// returned surface, whose generic cover is already not log canonical.
std::optional<SurfaceSpec> degeneration_parent(const SurfaceSpec& spec);

// --- the assembled classification --------------------------------------------

// Recorded dimension of the automorphism group (8 for the plane, 9 for
// P(1,1,4) and HP(5), 10 for P(1,4,25)); the symbolic derivation is out of
// scope.
int dim_aut(const SurfaceSpec& spec);

struct Stratum {
    SurfaceSpec surface;
    BranchCase c = BranchCase::I;
    int dim = 0;
};

struct ClassificationReport {
    int depth = 0;
    int theta_basis = 0;  // |Z Pi|, the mutation-invariant lattice count
    int moduli_dim = 0;   // theta_basis - 1 (projectivised octics)
    int smooth_dim = 0;   // dimension of the smooth-octic locus
    SweepResult sweep;
    std::vector<CaseVerdict> verdicts;
    std::vector<std::string> survivors;  // surfaces with a normal-lc stratum
    std::vector<Stratum> strata;
    std::vector<std::array<std::string, 2>> adjacencies;  // {inner, outer closure}
    std::vector<std::array<std::string, 2>> exclusions;   // {surface, parent}
};

// Run the sweep and every case analysis, assemble the surviving strata and
// their dimensions, and cross-check them against the recorded expectations.
// Any mismatch (surviving set, stratum dimension, sweep inconsistency)
// throws std::logic_error: the report is only produced when the whole
// classification closes.
ClassificationReport full_classification(int depth);

}  // namespace octic
