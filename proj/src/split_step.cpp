// Copyright (c) 2026 The recap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

#include <fftw3.h>

#include "propagators.hpp"
#include "recap/error.hpp"

namespace recap::evolve::detail {

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex &planner_mutex() {
  static std::mutex m;
  return m;
}

class FftBuffer {
public:
  explicit FftBuffer(std::size_t n) : n_(n) {
    data_ = fftw_alloc_complex(n);
    if (data_ == nullptr)
      throw NumericError("fftw_alloc_complex failed");
    std::lock_guard lock(planner_mutex());
    const int ni = static_cast<int>(n);
    forward_ = fftw_plan_dft_1d(ni, data_, data_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(ni, data_, data_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  FftBuffer(const FftBuffer &other) : FftBuffer(other.n_) {}
  FftBuffer &operator=(const FftBuffer &) = delete;
  ~FftBuffer() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(data_);
  }

  complex *data() noexcept { return reinterpret_cast<complex *>(data_); }
  void forward() noexcept { fftw_execute(forward_); }
  void backward() noexcept { fftw_execute(backward_); }

private:
  std::size_t n_;
  fftw_complex *data_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

/// Strang splitting e^{-iV dt/2} e^{-iT dt} e^{-iV dt/2} with V complex inside the absorber.
class SplitStep final : public Propagator {
public:
  SplitStep(const StateVector &initial, Potential potential, const EvolutionSettings &settings)
      : Propagator(initial, potential, settings), fft_(settings_.grid_points) {
    const GridSpec grid = settings_.grid();
    const std::size_t n = grid.points;
    potential_values_.resize(n);
    absorber_values_.resize(n);
    k2_.resize(n);
    const double dk = 2.0 * std::numbers::pi / (2.0 * grid.extent);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = grid.coordinate(i);
      potential_values_[i] = potential_(x);
      absorber_values_[i] = absorber(settings_, std::fabs(x));
      const double m = i < n / 2 ? static_cast<double>(i) : static_cast<double>(i) - static_cast<double>(n);
      k2_[i] = (m * dk) * (m * dk);
    }
    build_factors(settings_.dt, half_, kinetic_);
  }

  std::unique_ptr<Propagator> clone() const override { return std::make_unique<SplitStep>(*this); }

protected:
  void step(double dt) override {
    if (dt == settings_.dt) {
      apply(half_, kinetic_);
    } else {
      std::vector<complex> half, kinetic;
      build_factors(dt, half, kinetic);
      apply(half, kinetic);
    }
  }

private:
  void build_factors(double dt, std::vector<complex> &half, std::vector<complex> &kinetic) const {
    const std::size_t n = k2_.size();
    half.resize(n);
    kinetic.resize(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      half[i] = std::polar(std::exp(-0.5 * dt * absorber_values_[i]), -0.5 * dt * potential_values_[i]);
      kinetic[i] = std::polar(scale, -0.5 * dt * k2_[i]);
    }
  }

  void apply(const std::vector<complex> &half, const std::vector<complex> &kinetic) {
    auto &psi = state_.samples();
    complex *buf = fft_.data();
    const std::size_t n = psi.size();
    for (std::size_t i = 0; i < n; ++i)
      buf[i] = half[i] * psi[i];
    fft_.forward();
    for (std::size_t i = 0; i < n; ++i)
      buf[i] *= kinetic[i];
    fft_.backward();
    for (std::size_t i = 0; i < n; ++i)
      psi[i] = half[i] * buf[i];
  }

  FftBuffer fft_;
  std::vector<double> potential_values_;
  std::vector<double> absorber_values_;
  std::vector<double> k2_;
  std::vector<complex> half_;
  std::vector<complex> kinetic_;
};

} // namespace

std::vector<complex> spectral_second_derivative(const std::vector<complex> &psi, double spacing) {
  const std::size_t n = psi.size();
  FftBuffer fft(n);
  complex *buf = fft.data();
  std::copy(psi.begin(), psi.end(), buf);
  fft.forward();
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * spacing);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = i < n / 2 ? static_cast<double>(i) : static_cast<double>(i) - static_cast<double>(n);
    buf[i] *= -(m * dk) * (m * dk) / static_cast<double>(n);
  }
  fft.backward();
  return {buf, buf + n};
}

std::unique_ptr<Propagator> make_split_step(const StateVector &initial, Potential potential,
                                            const EvolutionSettings &settings) {
  return std::make_unique<SplitStep>(initial, potential, settings);
}

} // namespace recap::evolve::detail
