#pragma once

// Random-matrix estimate of the atoms of P ∧ Q and P ∧ Q^⊥ for projections in
// general position: P is a fixed coordinate projection, Q the range of a
// Haar-distributed isometry. Eigenvalues of BᵀB (B the P-rows of the isometry)
// equal to 1 count P ∧ Q; the kernel of B inside P counts P ∧ Q^⊥.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace atom_sim {

struct Trial {
  double meet = 0;        // dim(P ∧ Q) / N
  double meet_perp = 0;   // dim(P ∧ Q^⊥) / N
};

inline Eigen::MatrixXd haar_isometry(int n, int k, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
}

inline Trial run_trial(int n, int rank_p, int rank_q, std::mt19937_64& rng, double tol = 1e-8) {
  Eigen::MatrixXd v = haar_isometry(n, rank_q, rng);
  Eigen::MatrixXd b = v.topRows(rank_p);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.transpose() * b, Eigen::EigenvaluesOnly);
  int ones = 0, nonzero = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double x = es.eigenvalues()(i);
    ones += x > 1 - tol;
    nonzero += x > tol;
  }
  return {double(ones) / n, double(rank_p - nonzero) / n};
}

struct Summary {
  std::vector<Trial> trials;
  double mean_meet = 0;
  double mean_meet_perp = 0;
};

inline Summary simulate(int n, double p, double q, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Summary s;
  const int rp = int(p * n + 0.5), rq = int(q * n + 0.5);
  for (int t = 0; t < trials; ++t) {
    s.trials.push_back(run_trial(n, rp, rq, rng));
    s.mean_meet += s.trials.back().meet / trials;
    s.mean_meet_perp += s.trials.back().meet_perp / trials;
  }
  return s;
}

}  // namespace atom_sim
