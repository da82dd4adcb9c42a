#include "rydion/tracking.hpp"

#include "parallel.hpp"
#include "rydion/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace rydion {

namespace {

struct Eig {
  Eigen::VectorXd e;
  Eigen::MatrixXd v;  // columns
};

Eigen::MatrixXd sub(const Eigen::MatrixXd& h, const std::vector<int>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) s(i, k) = h(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(k)]);
  return s;
}

Eig diag(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw ConvergenceError("eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

// runs of near-equal eigenvalues (input ascending)
std::vector<std::pair<int, int>> clusters(const Eigen::VectorXd& e, double tol) {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(e.size());
  for (int i = 0; i < n;) {
    int k = i + 1;
    while (k < n && e(k) - e(k - 1) <= tol * std::max(1.0, std::abs(e(k)))) ++k;
    if (k - i > 1) out.emplace_back(i, k - i);
    i = k;
  }
  return out;
}

// Reorder/rotate the eigenpairs so column t continues previous column t.
struct Aligned {
  Eig eig;
  Eigen::VectorXd overlap;
};

Aligned align(const Eigen::MatrixXd& prev, Eig cur, double tol) {
  const auto n = cur.v.cols();
  for (auto [i0, k] : clusters(cur.e, tol)) {
    Eigen::MatrixXd qc = cur.v.middleCols(i0, k);
    Eigen::MatrixXd m = prev.transpose() * qc;  // tracks x k
    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return m.row(a).squaredNorm() > m.row(b).squaredNorm(); });
    Eigen::MatrixXd psel(prev.rows(), k);
    for (int c = 0; c < k; ++c) psel.col(c) = prev.col(order[static_cast<size_t>(c)]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(qc.transpose() * psel, Eigen::ComputeFullU | Eigen::ComputeFullV);
    cur.v.middleCols(i0, k) = qc * svd.matrixU() * svd.matrixV().transpose();
  }
  const Eigen::MatrixXd o = (prev.transpose() * cur.v).cwiseAbs();
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  pairs.reserve(static_cast<size_t>(n * n));
  for (Eigen::Index t = 0; t < n; ++t)
    for (Eigen::Index c = 0; c < n; ++c) pairs.emplace_back(t, c);
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const auto& a, const auto& b) { return o(a.first, a.second) > o(b.first, b.second); });
  std::vector<Eigen::Index> col_of(static_cast<size_t>(n), -1);
  std::vector<bool> used(static_cast<size_t>(n), false);
  for (auto [t, c] : pairs) {
    if (col_of[static_cast<size_t>(t)] >= 0 || used[static_cast<size_t>(c)]) continue;
    col_of[static_cast<size_t>(t)] = c;
    used[static_cast<size_t>(c)] = true;
  }
  Aligned a;
  a.eig.e.resize(n);
  a.eig.v.resize(n, n);
  a.overlap.resize(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    const auto c = col_of[static_cast<size_t>(t)];
    Eigen::VectorXd v = cur.v.col(c);
    if (prev.col(t).dot(v) < 0) v = -v;
    a.eig.e(t) = cur.e(c);
    a.eig.v.col(t) = v;
    a.overlap(t) = o(t, c);
  }
  return a;
}

// Greedy bijection between the tracks of one block and its Paschen-Back labels
// at point p. Returns the summed weight of the chosen pairs.
double greedy_labels(const AdiabaticTrack& tr, const BasisSet& basis, size_t p, Eigen::Index col0,
                     const std::vector<PBLabel>& labs, std::vector<int>& lab_of) {
  const auto nbk = static_cast<Eigen::Index>(labs.size());
  std::vector<std::tuple<double, Eigen::Index, size_t>> w;
  for (Eigen::Index t = 0; t < nbk; ++t) {
    const Eigen::VectorXd v = tr.vectors[p].col(col0 + t);
    for (size_t k = 0; k < labs.size(); ++k) w.emplace_back(uncoupled_weight(basis, v, labs[k]), t, k);
  }
  std::stable_sort(w.begin(), w.end(), [](const auto& x, const auto& y) { return std::get<0>(x) > std::get<0>(y); });
  lab_of.assign(static_cast<size_t>(nbk), -1);
  std::vector<bool> taken(labs.size(), false);
  double score = 0;
  for (auto& [wt, t, k] : w) {
    if (lab_of[static_cast<size_t>(t)] >= 0 || taken[k]) continue;
    lab_of[static_cast<size_t>(t)] = static_cast<int>(k);
    taken[k] = true;
    score += wt;
  }
  return score;
}

// Labels are read where the spectrum is closest to pure Paschen-Back character
// (or at opt.label_B), then carried along the tracks.
void assign_labels(AdiabaticTrack& tr, const BasisSet& basis, const std::vector<Block>& blks, const TrackOptions& opt) {
  const size_t np = tr.B.size();
  std::vector<std::vector<PBLabel>> labs(blks.size());
  std::vector<Eigen::Index> col0(blks.size());
  Eigen::Index c = 0;
  for (size_t b = 0; b < blks.size(); ++b) {
    for (const auto& l : uncoupled_labels(basis))
      if (2 * l.ml + l.twoms == blks[b].twomj && (l.l % 2 ? -1 : 1) == blks[b].parity) labs[b].push_back(l);
    if (labs[b].size() != blks[b].index.size())
      throw DomainError("sweep_and_track: label count does not match block size");
    col0[b] = c;
    c += static_cast<Eigen::Index>(blks[b].index.size());
  }
  std::vector<int> lab_of;
  if (opt.label_B >= 0) {
    tr.label_point = 0;
    for (size_t p = 0; p < np; ++p)
      if (std::abs(tr.B[p] - opt.label_B) < std::abs(tr.B[tr.label_point] - opt.label_B)) tr.label_point = p;
  } else {
    double best = -1;
    for (size_t p = 0; p < np; ++p) {
      double score = 0;
      for (size_t b = 0; b < blks.size(); ++b) score += greedy_labels(tr, basis, p, col0[b], labs[b], lab_of);
      if (score > best + 1e-12) {
        best = score;
        tr.label_point = p;
      }
    }
  }
  for (size_t b = 0; b < blks.size(); ++b) {
    greedy_labels(tr, basis, tr.label_point, col0[b], labs[b], lab_of);
    for (size_t t = 0; t < labs[b].size(); ++t) {
      tr.labels.push_back(labs[b][static_cast<size_t>(lab_of[t])]);
      tr.twomj.push_back(blks[b].twomj);
    }
  }
}

}  // namespace

size_t AdiabaticTrack::track_of(const PBLabel& lab) const {
  for (size_t t = 0; t < labels.size(); ++t)
    if (labels[t] == lab) return t;
  throw LookupError("no track labelled " + lab.str());
}

size_t AdiabaticTrack::point_of(double b) const {
  for (size_t p = 0; p < B.size(); ++p)
    if (std::abs(B[p] - b) <= 1e-12 * std::max(1.0, std::abs(b))) return p;
  std::ostringstream os;
  os << "B = " << b << " T is not on the sweep grid";
  throw LookupError(os.str());
}

AdiabaticTrack sweep_and_track(const BasisSet& basis, const RadialSet& radial, const std::vector<double>& B_grid,
                               double beta, const TrackOptions& opt) {
  if (B_grid.empty()) throw DomainError("sweep_and_track: empty B grid");
  for (size_t i = 0; i < B_grid.size(); ++i) {
    if (B_grid[i] < 0) throw DomainError("sweep_and_track: B must be non-negative");
    if (i && !(B_grid[i] > B_grid[i - 1])) throw DomainError("sweep_and_track: B grid must be strictly ascending");
  }
  if (beta < 0) throw DomainError("sweep_and_track: beta must be non-negative");

  const HamiltonianTerms terms = assemble_terms(basis, radial);
  const auto blks = blocks(basis);
  const size_t np = B_grid.size(), nb = blks.size();

  std::vector<std::vector<Eig>> raw(np, std::vector<Eig>(nb));
  detail::parallel_for(np, opt.threads, [&](size_t p) {
    const Eigen::MatrixXd h = terms.at({B_grid[p], beta});
    for (size_t b = 0; b < nb; ++b) raw[p][b] = diag(sub(h, blks[b].index));
  });

  AdiabaticTrack tr;
  tr.B = B_grid;
  tr.beta = beta;
  const auto N = static_cast<Eigen::Index>(basis.size());
  tr.energies.assign(np, Eigen::VectorXd::Zero(N));
  tr.vectors.assign(np, Eigen::MatrixXd::Zero(N, N));
  tr.overlap_prev.assign(np, std::vector<double>(basis.size(), 1.0));

  Eigen::Index col0 = 0;
  for (size_t b = 0; b < nb; ++b) {
    const auto& idx = blks[b].index;
    const auto nbk = static_cast<Eigen::Index>(idx.size());

    // first point: split degenerate clusters along the direction the field moves them
    Eig first = raw[0][b];
    {
      const double b1 = np > 1 ? B_grid[1] : B_grid[0] + 1e-3;
      const Eigen::MatrixXd dh = sub(terms.at({b1, beta}) - terms.at({B_grid[0], beta}), idx);
      for (auto [i0, k] : clusters(first.e, opt.degeneracy_tol)) {
        Eigen::MatrixXd qc = first.v.middleCols(i0, k);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(qc.transpose() * dh * qc);
        first.v.middleCols(i0, k) = qc * es.eigenvectors();
      }
    }

    std::vector<Eig> path(np);
    path[0] = first;
    std::vector<Eigen::VectorXd> ov(np, Eigen::VectorXd::Ones(nbk));

    for (size_t p = 1; p < np; ++p) {
      Aligned a = align(path[p - 1].v, raw[p][b], opt.degeneracy_tol);
      if (a.overlap.minCoeff() < opt.refine_below) {
        // walk through intermediate points, halving until each step is smooth
        std::vector<std::pair<double, int>> todo{{B_grid[p], 0}};
        double b_cur = B_grid[p - 1];
        Eig cur = path[p - 1];
        Eigen::VectorXd worst = Eigen::VectorXd::Ones(nbk);  // smallest sub-step overlap per track
        while (!todo.empty()) {
          auto [b_to, depth] = todo.back();
          Eig target = diag(sub(terms.at({b_to, beta}), idx));
          Aligned step = align(cur.v, target, opt.degeneracy_tol);
          if (step.overlap.minCoeff() < opt.refine_below && depth < opt.max_depth) {
            todo.push_back({0.5 * (b_cur + b_to), depth + 1});
            ++tr.refinements;
            continue;
          }
          if (step.overlap.minCoeff() < opt.fail_below) {
            std::ostringstream os;
            os << "ambiguous track assignment in block 2mj=" << blks[b].twomj << " between B = " << b_cur
               << " T and " << b_to << " T (overlap " << step.overlap.minCoeff() << ")";
            throw ConvergenceError(os.str());
          }
          todo.pop_back();
          b_cur = b_to;
          cur = step.eig;
          worst = worst.cwiseMin(step.overlap);
        }
        a.eig = cur;
        a.overlap = worst;
      }
      path[p] = a.eig;
      ov[p] = a.overlap;
    }

    for (size_t p = 0; p < np; ++p)
      for (Eigen::Index t = 0; t < nbk; ++t) {
        tr.energies[p](col0 + t) = path[p].e(t);
        for (Eigen::Index r = 0; r < nbk; ++r) tr.vectors[p](idx[static_cast<size_t>(r)], col0 + t) = path[p].v(r, t);
        tr.overlap_prev[p][static_cast<size_t>(col0 + t)] = ov[p](t);
      }

    col0 += nbk;
  }
  assign_labels(tr, basis, blks, opt);
  return tr;
}

double dipole_element(const AdiabaticTrack& tr, const Eigen::MatrixXd& z, const PBLabel& a, const PBLabel& b,
                      double B) {
  const size_t p = tr.point_of(B);
  const auto ta = static_cast<Eigen::Index>(tr.track_of(a)), tb = static_cast<Eigen::Index>(tr.track_of(b));
  return std::abs(tr.vectors[p].col(ta).dot(z * tr.vectors[p].col(tb)));
}

}  // namespace rydion
