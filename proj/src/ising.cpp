#include "hoi/ising.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hoi/entropy_source.hpp"
#include "hoi/oinfo.hpp"
#include "hoi/parallel.hpp"

namespace hoi {

namespace {

constexpr int kMaxSpins = 24;

int spin_of(std::size_t state, int n, int k) {
  return ((state >> (n - 1 - k)) & 1U) != 0 ? 1 : -1;
}

std::vector<double> log_weights(const IsingModel& model) {
  const int n = model.n_spins();
  std::vector<double> out(std::size_t{1} << n);
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = -model.beta() * model.energy(s);
  return out;
}

}  // namespace

IsingModel::IsingModel(Eigen::MatrixXd couplings, double beta) : couplings_(std::move(couplings)), beta_(beta) {
  if (couplings_.rows() == 0 || couplings_.rows() != couplings_.cols()) {
    throw std::invalid_argument("IsingModel: coupling matrix must be square and non-empty");
  }
  for (Eigen::Index i = 0; i < couplings_.rows(); ++i) {
    if (couplings_(i, i) != 0.0) throw std::invalid_argument("IsingModel: coupling diagonal must be zero");
    for (Eigen::Index j = 0; j < i; ++j) {
      if (!(std::abs(couplings_(i, j) - couplings_(j, i)) <= 1e-12)) {
        throw std::invalid_argument("IsingModel: coupling matrix is not symmetric");
      }
    }
  }
  if (!(beta_ >= 0.0) || !std::isfinite(beta_)) {
    throw std::invalid_argument("IsingModel: beta must be finite and >= 0");
  }
}

double IsingModel::energy(std::size_t state) const {
  const int n = n_spins();
  double e = 0.0;
  for (int i = 0; i < n; ++i) {
    const int si = spin_of(state, n, i);
    for (int j = i + 1; j < n; ++j) {
      const double jij = couplings_(i, j);
      if (jij != 0.0) e -= jij * si * spin_of(state, n, j);
    }
  }
  return e;
}

Eigen::MatrixXd hexagon_couplings() {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(7, 7);
  for (int k = 0; k < 6; ++k) {
    const int a = 1 + k;
    const int b = 1 + (k + 1) % 6;
    j(a, b) = j(b, a) = 1.0;
    const double spoke = (k % 2 == 0) ? 1.0 : -1.0;
    j(0, a) = j(a, 0) = spoke;
  }
  return j;
}

IsingModel hexagon_model(double beta) { return IsingModel(hexagon_couplings(), beta); }

DiscreteJointDistribution boltzmann_distribution(const IsingModel& model) {
  const int n = model.n_spins();
  if (n > kMaxSpins) {
    throw std::invalid_argument("boltzmann_distribution: " + std::to_string(n) + " spins exceeds the cap of " +
                                std::to_string(kMaxSpins));
  }
  auto w = log_weights(model);
  const double top = *std::max_element(w.begin(), w.end());
  double z = 0.0;
  for (double& x : w) {
    x = std::exp(x - top);
    z += x;
  }
  for (double& x : w) x /= z;
  return DiscreteJointDistribution(std::vector<int>(n, 2), std::move(w));
}

double partition_function(const IsingModel& model) {
  if (model.n_spins() > kMaxSpins) throw std::invalid_argument("partition_function: too many spins");
  double z = 0.0;
  for (double lw : log_weights(model)) z += std::exp(lw);
  return z;
}

double log_partition_function(const IsingModel& model) {
  if (model.n_spins() > kMaxSpins) throw std::invalid_argument("log_partition_function: too many spins");
  const auto w = log_weights(model);
  const double top = *std::max_element(w.begin(), w.end());
  double z = 0.0;
  for (double lw : w) z += std::exp(lw - top);
  return top + std::log(z);
}

std::string SweepQuantity::label() const {
  switch (kind) {
    case Kind::GradientFirst:
      return "grad1_" + std::to_string(i);
    case Kind::GradientSecond:
      return "grad2_" + std::to_string(i) + "_" + std::to_string(j);
    case Kind::LocalOInformation:
      return "local_" + std::to_string(i) + "_" + std::to_string(j);
    case Kind::OInformation:
      return "oinfo";
  }
  return "?";
}

const std::vector<double>& SweepResult::curve(const std::string& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw std::out_of_range("no sweep curve labelled '" + label + "'");
  return curves[static_cast<std::size_t>(it - labels.begin())];
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 1) throw std::invalid_argument("linear_grid: need at least one point");
  if (points == 1) return {lo};
  std::vector<double> out(points);
  for (int k = 0; k < points; ++k) out[k] = lo + (hi - lo) * k / (points - 1);
  out.back() = hi;
  return out;
}

std::vector<double> default_beta_grid() { return linear_grid(0.0, 2.0, 64); }

SweepResult sweep(const std::function<IsingModel(double)>& model_factory, const std::vector<double>& betas,
                  const std::vector<SweepQuantity>& quantities, unsigned threads) {
  if (betas.empty()) throw std::invalid_argument("sweep: empty beta grid");
  if (quantities.empty()) throw std::invalid_argument("sweep: no quantities requested");

  SweepResult result;
  result.betas = betas;
  for (const auto& q : quantities) result.labels.push_back(q.label());
  result.curves.assign(quantities.size(), std::vector<double>(betas.size(), 0.0));

  parallel_for(
      betas.size(),
      [&](std::size_t b) {
        const IsingModel model = model_factory(betas[b]);
        const EntropyCache cache = make_cache(boltzmann_distribution(model));
        const SubsetMask system = SubsetMask::all(model.n_spins());
        for (std::size_t q = 0; q < quantities.size(); ++q) {
          const auto& quantity = quantities[q];
          double value = 0.0;
          switch (quantity.kind) {
            case SweepQuantity::Kind::GradientFirst:
              value = gradient_first(cache, system, quantity.i);
              break;
            case SweepQuantity::Kind::GradientSecond:
              value = gradient_second(cache, system, quantity.i, quantity.j);
              break;
            case SweepQuantity::Kind::LocalOInformation:
              value = local_o_information(cache, system, quantity.i, quantity.j);
              break;
            case SweepQuantity::Kind::OInformation:
              value = o_information(cache, system);
              break;
          }
          result.curves[q][b] = value;
        }
      },
      threads);
  return result;
}

std::vector<SweepQuantity> first_order_quantities(int n_spins) {
  std::vector<SweepQuantity> out;
  for (int i = 0; i < n_spins; ++i) out.push_back(SweepQuantity::gradient_first(i));
  return out;
}

std::vector<SweepQuantity> pair_quantities(int n_spins, SweepQuantity::Kind kind) {
  std::vector<SweepQuantity> out;
  for (int i = 0; i < n_spins; ++i) {
    for (int j = i + 1; j < n_spins; ++j) out.push_back({kind, i, j});
  }
  return out;
}

}  // namespace hoi
