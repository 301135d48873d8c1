#pragma once

#include <cstdint>

#include "arvex/dilation.hpp"
#include "arvex/tuple.hpp"

namespace arvex {

/// Orthonormal basis (Frobenius inner product) of the self-adjoint matrices
/// commuting with every entry of X. dim == 1 iff X is irreducible over the
/// requested field.
struct CommutantBasis {
  std::vector<Matrix> basis;
  int dim = 0;
};

CommutantBasis commutant(const MatrixTuple& x, Field field, const ToleranceConfig& cfg);

bool is_irreducible(const MatrixTuple& x, Field field, const ToleranceConfig& cfg);

/// One irreducible block of X: component = embed* X embed where embed has
/// orthonormal columns; concatenating the embeds over all components gives a
/// unitary U with U* X U block diagonal.
struct SplitComponent {
  MatrixTuple component;
  Matrix embed;  // n x n_i
};

/// Splits X into irreducible blocks by eigenspaces of a non-scalar
/// commutant element, recursively. Throws SolverError when an eigenvalue
/// cluster of the splitter has no safe relative gap.
std::vector<SplitComponent> split_irreducible(const MatrixTuple& x, Field field,
                                              const ToleranceConfig& cfg);

struct CertFlags {
  bool irreducible = false;
  bool arveson = false;
  bool absolute_extreme = false;
  bool conjugation_warning = false;  // set when the pencil is not real
};

/// absolute_extreme = irreducible and Arveson; exact when the spectrahedron
/// is closed under complex conjugation (real pencils always are).
CertFlags absolute_extreme_certify(const Pencil& p, const MatrixTuple& x, const ToleranceConfig& cfg);

/// X written as sum_i V_i* Y^i V_i with sum_i V_i* V_i = I, every Y^i an
/// absolute extreme point of the spectrahedron.
struct ExtremeDecomposition {
  std::vector<MatrixTuple> components;   // Y^i, n_i x n_i
  std::vector<Matrix> isometries;        // V_i, n_i x n
  std::vector<CertFlags> flags;
  Eigen::Index total_size = 0;           // sum n_i
  Eigen::Index bound = 0;                // n(g+1) real, 2n(g+1) complex
  MatrixTuple input;                     // X
  std::vector<int> equivalence_class;    // word-trace heuristic, per component
  DilationTrace trace;
};

/// Dilates X to the Arveson boundary, splits the result into irreducible
/// blocks, and assembles the matrix convex combination recovering X.
/// Real pencils and real X only; complex members go through the
/// complexification pipeline.
ExtremeDecomposition decompose_extreme(const Pencil& p, const MatrixTuple& x,
                                       const ToleranceConfig& cfg, CounterRng& rng);

/// Parameter counts for representing an n x n g-tuple via extreme points:
/// classical convex combinations versus a single dimension-free extreme
/// point of size at most 2n(g+1).
struct ParameterReport {
  std::uint64_t classical = 0;
  std::uint64_t free_dim = 0;
};

ParameterReport parameter_report(int n, int g);

/// Traces of words in the tuple entries up to the given length; matching
/// lists are a cheap necessary condition for unitary equivalence.
std::vector<Scalar> word_trace_signature(const MatrixTuple& x, int max_len);

/// Heuristic grouping of components by word traces up to length 3.
std::vector<int> equivalence_classes(const std::vector<MatrixTuple>& tuples, double tol);

}  // namespace arvex
