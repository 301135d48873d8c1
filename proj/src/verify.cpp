#include "arvex/verify.hpp"

#include <cmath>
#include <sstream>

#include "arvex/schur.hpp"

namespace arvex {

namespace {

struct Checker {
  VerifyReport rep;

  void add(bool pass, const std::string& name, const std::string& detail) {
    ++rep.checks;
    if (!pass) {
      ++rep.failures;
      rep.ok = false;
    }
    rep.lines += (pass ? "ok   " : "FAIL ") + name + (detail.empty() ? "" : ": " + detail) + "\n";
  }
};

}  // namespace

VerifyReport verify_decomposition(const Pencil& p, const ExtremeDecomposition& d,
                                  const ToleranceConfig& cfg) {
  Checker ck;
  const size_t m = d.components.size();
  if (m == 0 || d.isometries.size() != m || d.flags.size() != m) {
    ck.add(false, "structure", "component/isometry/flag counts do not line up");
    return ck.rep;
  }
  const Eigen::Index n = d.isometries.front().cols();

  Matrix resolution = Matrix::Zero(n, n);
  for (const auto& v : d.isometries) {
    if (v.cols() != n) {
      ck.add(false, "structure", "isometries target different sizes");
      return ck.rep;
    }
    resolution += v.adjoint() * v;
  }
  const double part_resid = (resolution - Matrix::Identity(n, n)).norm();
  {
    std::ostringstream det;
    det << "residual " << part_resid;
    ck.add(part_resid <= 1e-8, "partition-of-identity", det.str());
  }

  Eigen::Index total = 0;
  for (const auto& c : d.components) total += c.rows;
  {
    std::ostringstream det;
    det << "sum " << total << " recorded " << d.total_size << " bound " << d.bound;
    ck.add(total == d.total_size && total <= d.bound, "size-bound", det.str());
  }

  if (d.input.rows == n && d.input.g() == static_cast<int>(p.g())) {
    MatrixTuple rebuilt = MatrixTuple::zero(Field::Complex, p.g(), n, n);
    for (size_t i = 0; i < m; ++i) {
      for (int j = 0; j < p.g(); ++j)
        rebuilt[j] += d.isometries[i].adjoint() * d.components[i][j] * d.isometries[i];
    }
    double resid = 0.0;
    for (int j = 0; j < p.g(); ++j) resid = std::max(resid, (rebuilt[j] - d.input[j]).norm());
    std::ostringstream det;
    det << "residual " << resid;
    ck.add(resid <= 1e-8, "reconstruction", det.str());
  }

  for (size_t i = 0; i < m; ++i) {
    const MatrixTuple& y = d.components[i];
    std::ostringstream tag;
    tag << "component[" << i << "]";
    // Membership through the two-route Schur oracle with trivial borders.
    const MatrixTuple zero_off = MatrixTuple::zero(y.field, y.g(), y.rows, 1);
    const MatrixTuple zero_corner = MatrixTuple::zero(y.field, y.g(), 1, 1);
    bool member = false;
    std::string why;
    try {
      SchurVerdict sv = schur2_check(p, y, zero_off, zero_corner, cfg);
      member = sv.psd;
      std::ostringstream w;
      w << "min_eig " << sv.min_eig_direct;
      why = w.str();
    } catch (const std::exception& e) {
      why = e.what();
    }
    ck.add(member, tag.str() + " membership", why);
    if (!member) continue;

    const bool arv = is_arveson(p, y, cfg);
    ck.add(arv, tag.str() + " arveson", "");
    const bool irr = is_irreducible(y, y.field, cfg);
    ck.add(irr, tag.str() + " irreducible", "");
    const CertFlags& f = d.flags[i];
    const bool flags_ok = f.arveson == arv && f.irreducible == irr &&
                          f.absolute_extreme == (arv && irr) && f.absolute_extreme;
    ck.add(flags_ok, tag.str() + " flags", "");
  }

  return ck.rep;
}

}  // namespace arvex
