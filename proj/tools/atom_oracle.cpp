// atom_oracle: Monte Carlo check of the atom rule α + β - 1 for two projections
// in general position.
//
//   atom_oracle [--n 1000] [--p 4/5] [--q 7/10] [--trials 5] [--seed 7]

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "atom_sim.hpp"
#include "freecore/rational.hpp"

int main(int argc, char** argv) {
  CLI::App app{"random-matrix atom oracle"};
  int n = 1000, trials = 5;
  std::uint64_t seed = 7;
  std::string p = "4/5", q = "7/10";
  app.add_option("--n", n)->check(CLI::PositiveNumber);
  app.add_option("--p", p, "trace of P");
  app.add_option("--q", q, "trace of Q");
  app.add_option("--trials", trials)->check(CLI::PositiveNumber);
  app.add_option("--seed", seed);
  CLI11_PARSE(app, argc, argv);

  try {
    auto rp = freecore::Rational::parse(p), rq = freecore::Rational::parse(q);
    auto s = atom_sim::simulate(n, rp.to_double(), rq.to_double(), trials, seed);
    auto meet = rp + rq - freecore::Rational(1);
    auto perp = rp - rq;
    for (std::size_t i = 0; i < s.trials.size(); ++i)
      std::cout << "trial " << i << ": P∧Q " << s.trials[i].meet << ", P∧Q^⊥ " << s.trials[i].meet_perp << "\n";
    std::cout << "mean P∧Q " << s.mean_meet << " (rule " << (meet.is_positive() ? meet : freecore::Rational(0)) << ")\n";
    std::cout << "mean P∧Q^⊥ " << s.mean_meet_perp << " (rule " << (perp.is_positive() ? perp : freecore::Rational(0))
              << ")\n";
  } catch (const std::exception& e) {
    std::cerr << "atom_oracle: " << e.what() << "\n";
    return 2;
  }
}
