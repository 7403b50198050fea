#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qnn/error.hpp"
#include "qnn/perceptron.hpp"
#include "qnn/random.hpp"
#include "test_helpers.hpp"

namespace qnn {
namespace {

using testing::d;
using testing::kTol;
using testing::matrix_near;
using testing::state_near;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Matrix2 swap_matrix() {
  Matrix2 m;
  m(0, 1) = Complex(1.0);
  m(1, 0) = Complex(1.0);
  return m;
}

Perceptron random_perceptron(Rng& rng, std::size_t n, double radius) {
  std::vector<WeightMatrix> w(n);
  for (auto& m : w) {
    for (auto& row : m.m) {
      for (auto& e : row) {
        e = random_in_disc(rng, radius);
      }
    }
  }
  return Perceptron(w);
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

TEST(Perceptron, RejectsEmptyWeights) {
  EXPECT_THROW(Perceptron(std::vector<WeightMatrix>{}), ValidationError);
}

TEST(Forward, IdentityWeightsSumInputs) {
  const Perceptron p({Matrix2::identity(), Matrix2::identity()});
  const std::vector<Qubit> in{ket0(), ket0()};
  EXPECT_EQ(forward(p, in), (StateVector{Complex(2.0), Complex(0.0)}));
}

TEST(Forward, ZeroWeightsAnnihilate) {
  const Perceptron p({Matrix2::zero(), Matrix2::zero()});
  const std::vector<Qubit> in{ket0(), ket1()};
  EXPECT_EQ(forward(p, in), StateVector{});
}

TEST(Forward, PermutationWeight) {
  const Perceptron p({swap_matrix()});
  const std::vector<Qubit> in{ket0()};
  EXPECT_EQ(forward(p, in), ket1().state());
}

TEST(Forward, ArityMismatch) {
  const Perceptron p({Matrix2::identity(), Matrix2::identity()});
  const std::vector<Qubit> in{ket0()};
  EXPECT_THROW(forward(p, in), ArityError);
}

TEST(Forward, AppliesOutputOperator) {
  const Perceptron p({Matrix2::identity()}, OutputOperator{swap_matrix(), "swap"});
  const std::vector<Qubit> in{ket0()};
  EXPECT_EQ(forward(p, in), ket1().state());
}

TEST(Forward, LinearInEachSlot) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const Perceptron p = random_perceptron(rng, n, 1.0);
    std::vector<StateVector> in;
    for (std::size_t j = 0; j < n; ++j) {
      in.push_back(random_qubit(rng).state());
    }
    const std::size_t j = trial % n;
    const Complex k = random_in_disc(rng, 2.0);
    auto scaled = in;
    scaled[j] = k * in[j];
    const StateVector expected =
        forward(p, in) + (k - Complex(1.0)) * (p.weights()[j] * in[j]);
    EXPECT_TRUE(state_near(forward(p, scaled), expected));
  }
}

TEST(LearnStep, EtaOneOverNConvergesInOneStep) {
  const Perceptron p({Matrix2::zero()});
  const std::vector<Qubit> in{ket0()};
  const Perceptron next = learn_step(p, in, ket1(), 1.0);
  Matrix2 want;
  want(1, 0) = Complex(1.0);
  EXPECT_EQ(next.weights()[0], want);
  EXPECT_EQ(forward(next, in), ket1().state());
  EXPECT_EQ(p.weights()[0], Matrix2::zero());
}

TEST(LearnStep, HalfStepOnSuperposition) {
  // w = 0, x = (1,1)/sqrt2, d = |0>, eta = 1/2:
  //   residual = (1, 0); w' = 1/2 (1,0)(1,1)/sqrt2 = [[1/(2 sqrt2), 1/(2 sqrt2)], [0, 0]]
  //   w' x = (1/2, 0)
  const Perceptron p({Matrix2::zero()});
  const std::vector<Qubit> in{make_qubit(Complex(1.0), Complex(1.0))};
  const StateVector desired = ket0().state();
  EXPECT_NEAR(d(residual_sq(p, as_states(in), desired)), 1.0, kTol);

  const Perceptron next = learn_step(p, in, desired, 0.5);
  Matrix2 want;
  want(0, 0) = Complex(0.5 * kInvSqrt2);
  want(0, 1) = Complex(0.5 * kInvSqrt2);
  EXPECT_TRUE(matrix_near(next.weights()[0], want));
  EXPECT_TRUE(state_near(forward(next, in), {Complex(0.5), Complex(0.0)}));
  EXPECT_NEAR(d(residual_sq(next, as_states(in), desired)), 0.25, kTol);
}

TEST(LearnStep, ZeroResidualLeavesWeightsUnchanged) {
  Rng rng(5);
  const Perceptron p = random_perceptron(rng, 3, 1.0);
  const std::vector<Qubit> in{random_qubit(rng), random_qubit(rng), random_qubit(rng)};
  const StateVector y = forward(p, in);
  EXPECT_EQ(learn_step(p, in, y, 0.3), p);
}

TEST(LearnStep, Errors) {
  const Perceptron p({Matrix2::identity()});
  const std::vector<Qubit> one{ket0()};
  const std::vector<Qubit> two{ket0(), ket1()};
  EXPECT_THROW(learn_step(p, two, ket0(), 0.1), ArityError);
  EXPECT_THROW(learn_step(p, one, ket0(), 0.0), ValidationError);
  const Perceptron f({Matrix2::identity()}, OutputOperator{swap_matrix(), "swap"});
  EXPECT_THROW(learn_step(f, one, ket0(), 0.1), OutputOperatorError);
}

TEST(LearnStep, ContractsResidualExactlyForAnyInputs) {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const Perceptron p = random_perceptron(rng, n, 1.5);
    std::vector<StateVector> in;
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      in.push_back(random_state(rng, rng.uniform(0.2, 2.0)));
      s += d(in.back().norm_sq());
    }
    const StateVector desired = random_state(rng, rng.uniform(0.5, 2.0));
    const double eta = rng.uniform(0.01, 1.5) / s;

    const StateVector r0 = desired - forward(p, in);
    const Perceptron next = learn_step(p, in, desired, eta);
    const StateVector r1 = desired - forward(next, in);
    // Residual is scaled by (1 - eta S) exactly, component by component.
    EXPECT_TRUE(state_near(r1, Complex(1.0 - eta * s) * r0, 1e-12));
    const double measured = d(r1.norm_sq() / r0.norm_sq());
    const double want = (1.0 - eta * s) * (1.0 - eta * s);
    EXPECT_LT(std::abs(measured - want), 1e-9 * std::max(want, 1e-3));
  }
}

TEST(LearnStep, ResidualUpdateIgnoresInputOrder) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const Perceptron p = random_perceptron(rng, n, 1.0);
    std::vector<StateVector> in;
    for (std::size_t j = 0; j < n; ++j) {
      in.push_back(random_state(rng, rng.uniform(0.5, 1.5)));
    }
    const StateVector desired = random_qubit(rng).state();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::rotate(perm.begin(), perm.begin() + 1, perm.end());

    std::vector<StateVector> in_perm;
    for (auto k : perm) {
      in_perm.push_back(in[k]);
    }
    const Perceptron p_perm(p.weights());
    // Same weights, permuted inputs: different residual, same contraction factor.
    const StateVector r0 = desired - forward(p_perm, in_perm);
    const StateVector r1 = desired - forward(learn_step(p_perm, in_perm, desired, 0.1), in_perm);
    double s = 0.0;
    for (const auto& x : in) {
      s += d(x.norm_sq());
    }
    EXPECT_TRUE(state_near(r1, Complex(1.0 - 0.1 * s) * r0, 1e-12));

    // Permuting weights together with inputs gives the identical next residual.
    std::vector<WeightMatrix> w_perm;
    for (auto k : perm) {
      w_perm.push_back(p.weights()[k]);
    }
    const StateVector a = desired - forward(learn_step(p, in, desired, 0.1), in);
    const StateVector b =
        desired - forward(learn_step(Perceptron(w_perm), in_perm, desired, 0.1), in_perm);
    EXPECT_TRUE(state_near(a, b, 1e-12));
  }
}

TEST(PredictedRatio, Values) {
  const std::vector<double> one{1.0};
  const std::vector<double> four(4, 1.0);
  const std::vector<double> two(2, 1.0);
  EXPECT_DOUBLE_EQ(predicted_ratio(1, 0.5, one), 0.25);
  EXPECT_NEAR(predicted_ratio(4, 0.1, four), 0.36, 1e-15);
  EXPECT_EQ(predicted_ratio(2, 0.5, two), 0.0);
  const std::vector<double> mixed{0.5, 2.0};
  EXPECT_NEAR(predicted_ratio(2, 0.2, mixed), 0.25, 1e-15);
  EXPECT_THROW(predicted_ratio(3, 0.1, two), ArityError);
}

TEST(Train, OneStepAtEtaOneOverN) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const Perceptron p(init_weights(n, 0.1, 3 + n));
    Rng rng(n);
    std::vector<Qubit> in;
    for (std::size_t j = 0; j < n; ++j) {
      in.push_back(random_qubit(rng));
    }
    LearningConfig cfg;
    cfg.eta = 1.0 / static_cast<double>(n);
    const auto [trained, trace] = train(p, in, random_qubit(rng), cfg);
    EXPECT_TRUE(trace.converged);
    EXPECT_EQ(trace.learning_steps(), 1);
    EXPECT_LT(trace.final_error_sq(), 1e-20);
    EXPECT_FALSE(trace.steps.front().measured_ratio.has_value());
  }
}

TEST(Train, RatioIsPointFourNineForThreeInputsAtPointOne) {
  const Perceptron p(init_weights(3, 0.1, 2024));
  Rng rng(2024);
  const std::vector<Qubit> in{random_qubit(rng), random_qubit(rng), random_qubit(rng)};
  LearningConfig cfg;
  cfg.eta = 0.1;
  const auto [trained, trace] = train(p, in, random_qubit(rng), cfg);
  EXPECT_TRUE(trace.converged);
  EXPECT_FALSE(trace.eta_warning);
  int checked = 0;
  for (const auto& s : trace.steps) {
    EXPECT_NEAR(*s.predicted_ratio, 0.49, 1e-15);
    if (s.measured_ratio) {
      EXPECT_LT(rel(*s.measured_ratio, 0.49), 1e-9) << "step " << s.t;
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Train, EtaTwoOverSOscillates) {
  // (1 - 2)^2 = 1: the residual flips sign every step and never shrinks.
  const std::size_t n = 2;
  const Perceptron p(init_weights(n, 0.1, 8));
  Rng rng(8);
  const std::vector<Qubit> in{random_qubit(rng), random_qubit(rng)};
  const StateVector desired = random_qubit(rng).state();
  LearningConfig cfg;
  cfg.eta = 2.0 / static_cast<double>(n);
  cfg.max_steps = 25;
  const auto [trained, trace] = train(p, in, desired, cfg);
  EXPECT_FALSE(trace.converged);
  EXPECT_TRUE(trace.eta_warning);
  EXPECT_EQ(trace.learning_steps(), 25);

  // Simulation oracle: apply the update by hand and compare residuals.
  StateVector y = forward(p, in);
  for (const auto& s : trace.steps) {
    if (s.measured_ratio) {
      EXPECT_NEAR(*s.measured_ratio, 1.0, 1e-9);
    }
    EXPECT_NEAR(s.error_sq, d((desired - y).norm_sq()), 1e-12);
    // y' = y + eta S (d - y) with S = 2, eta = 1  =>  y' = 2 d - y
    y = Complex(2.0) * desired - y;
  }
}

TEST(Train, MonotoneBelowCriticalStep) {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const Perceptron p = random_perceptron(rng, n, 0.3);
    std::vector<Qubit> in;
    for (std::size_t j = 0; j < n; ++j) {
      in.push_back(random_qubit(rng));
    }
    LearningConfig cfg;
    cfg.eta = rng.uniform(0.05, 0.95) / static_cast<double>(n);
    cfg.tolerance = 1e-24;
    const auto [trained, trace] = train(p, in, random_qubit(rng), cfg);
    EXPECT_TRUE(trace.converged);
    for (std::size_t k = 1; k < trace.steps.size(); ++k) {
      EXPECT_LT(trace.steps[k].error_sq, trace.steps[k - 1].error_sq);
    }
  }
}

TEST(Train, DeterministicAndPure) {
  const Perceptron p(init_weights(4, 0.1, 77));
  Rng rng(77);
  std::vector<Qubit> in;
  for (int j = 0; j < 4; ++j) {
    in.push_back(random_qubit(rng));
  }
  const StateVector desired = random_qubit(rng).state();
  const Perceptron before = p;
  LearningConfig cfg;
  cfg.eta = 0.07;
  const auto a = train(p, in, desired, cfg);
  const auto b = train(p, in, desired, cfg);
  EXPECT_EQ(p, before);
  EXPECT_EQ(a.perceptron, b.perceptron);
  ASSERT_EQ(a.trace.steps.size(), b.trace.steps.size());
  for (std::size_t k = 0; k < a.trace.steps.size(); ++k) {
    EXPECT_EQ(a.trace.steps[k].error_sq, b.trace.steps[k].error_sq);
    EXPECT_EQ(a.trace.steps[k].measured_ratio, b.trace.steps[k].measured_ratio);
  }
}

TEST(Train, RejectsInvalidConfig) {
  const Perceptron p({Matrix2::zero()});
  const std::vector<Qubit> in{ket0()};
  LearningConfig cfg;
  cfg.max_steps = 0;
  EXPECT_THROW(train(p, in, ket1(), cfg), ValidationError);
  cfg = {};
  cfg.eta = -0.1;
  EXPECT_THROW(train(p, in, ket1(), cfg), ValidationError);
}

TEST(InitWeights, Contract) {
  for (const auto& w : init_weights(3, 0.0, 1)) {
    EXPECT_EQ(w, Matrix2::zero());
  }
  EXPECT_EQ(init_weights(4, 0.1, 42), init_weights(4, 0.1, 42));
  EXPECT_NE(init_weights(4, 0.1, 42), init_weights(4, 0.1, 43));
  for (const auto& w : init_weights(50, 0.25, 9)) {
    for (const auto& row : w.m) {
      for (const auto& e : row) {
        EXPECT_LE(d(abs(e)), 0.25 + 1e-15);
      }
    }
  }
}

TEST(InitWeights, SeedsGiveDistinctDraws) {
  // Over many adjacent seed pairs, no entry coincides.
  int equal_entries = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto a = init_weights(2, 1.0, s);
    const auto b = init_weights(2, 1.0, s + 1);
    for (std::size_t k = 0; k < 2; ++k) {
      for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
          equal_entries += a[k](r, c) == b[k](r, c) ? 1 : 0;
        }
      }
    }
  }
  EXPECT_EQ(equal_entries, 0);
}

TEST(InitWeights, FillsTheDiscUniformly) {
  // Under the uniform disc law P(|z| <= r/2) = 1/4.
  const auto w = init_weights(2000, 1.0, 5);
  int inside = 0;
  int total = 0;
  for (const auto& m : w) {
    for (const auto& row : m.m) {
      for (const auto& e : row) {
        inside += d(abs(e)) <= 0.5 ? 1 : 0;
        ++total;
      }
    }
  }
  const double frac = static_cast<double>(inside) / total;
  // 8000 draws: standard error ~0.005.
  EXPECT_NEAR(frac, 0.25, 0.025);
}

}  // namespace
}  // namespace qnn
