#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "herit/diagnostics.hpp"
#include "herit/errors.hpp"

using namespace herit;

namespace {

Vector planted_effects(Index p, const std::vector<Index>& support,
                       double magnitude_start) {
  Vector u = Vector::Zero(p);
  double m = magnitude_start;
  for (Index j : support) {
    u(j) = m;
    m *= 0.8;
  }
  return u;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("selecting the true support exactly gives capture 1") {
  const std::vector<Index> support{2, 5, 9, 14};
  Vector u = planted_effects(20, support, 2.0);
  RecoveryReport r = recovery_metrics(support, u);
  CHECK(r.capture_fraction == 1.0);
  CHECK(r.selected_size == 4);
  CHECK(r.true_support_size == 4);
  for (int d = 0; d < 10; ++d) {
    if (r.decile_size[static_cast<std::size_t>(d)] > 0) {
      CHECK(r.decile_capture[static_cast<std::size_t>(d)] == 1.0);
    }
  }
}

TEST_CASE("disjoint selection gives capture 0") {
  const std::vector<Index> support{2, 5, 9};
  Vector u = planted_effects(20, support, 1.0);
  RecoveryReport r = recovery_metrics({0, 1, 3}, u);
  CHECK(r.capture_fraction == 0.0);
  for (int d = 0; d < 10; ++d) {
    CHECK(r.decile_capture[static_cast<std::size_t>(d)] == 0.0);
  }
}

TEST_CASE("overall capture is the size-weighted mean of decile captures") {
  const Index p = 200;
  std::vector<Index> support;
  for (Index j = 0; j < 37; ++j) support.push_back(j * 5);
  Vector u = planted_effects(p, support, 3.0);
  std::vector<Index> selected;
  for (std::size_t k = 0; k < support.size(); k += 2) selected.push_back(support[k]);
  selected.push_back(p - 1);  // a false positive must not change capture
  RecoveryReport r = recovery_metrics(selected, u);

  double weighted = 0.0;
  Index total = 0;
  for (int d = 0; d < 10; ++d) {
    weighted += r.decile_capture[static_cast<std::size_t>(d)] *
                static_cast<double>(r.decile_size[static_cast<std::size_t>(d)]);
    total += r.decile_size[static_cast<std::size_t>(d)];
  }
  CHECK(total == r.true_support_size);
  CHECK(r.capture_fraction ==
        doctest::Approx(weighted / static_cast<double>(total)).epsilon(1e-12));
}

TEST_CASE("decile sizes partition the true support as evenly as possible") {
  std::vector<Index> support;
  for (Index j = 0; j < 23; ++j) support.push_back(j);
  Vector u = planted_effects(100, support, 1.0);
  RecoveryReport r = recovery_metrics({}, u);
  Index total = 0;
  for (int d = 0; d < 10; ++d) {
    const Index s = r.decile_size[static_cast<std::size_t>(d)];
    CHECK(s >= 2);
    CHECK(s <= 3);
    total += s;
  }
  CHECK(total == 23);
}

TEST_CASE("stronger effects land in earlier deciles") {
  // 20 causal effects with strictly decreasing magnitude; select only the
  // strongest 10. The first five deciles must be fully captured, the
  // last five fully missed.
  std::vector<Index> support;
  for (Index j = 0; j < 20; ++j) support.push_back(j);
  Vector u = Vector::Zero(50);
  for (Index j = 0; j < 20; ++j) u(j) = 20.0 - static_cast<double>(j);
  std::vector<Index> selected(support.begin(), support.begin() + 10);
  RecoveryReport r = recovery_metrics(selected, u);
  for (int d = 0; d < 5; ++d) {
    CHECK(r.decile_capture[static_cast<std::size_t>(d)] == 1.0);
  }
  for (int d = 5; d < 10; ++d) {
    CHECK(r.decile_capture[static_cast<std::size_t>(d)] == 0.0);
  }
  CHECK(r.capture_fraction == doctest::Approx(0.5));
}

TEST_CASE("selection order does not matter") {
  const std::vector<Index> support{1, 4, 7, 11, 18};
  Vector u = planted_effects(30, support, 2.0);
  std::vector<Index> selected{18, 1, 7};
  RecoveryReport a = recovery_metrics(selected, u);
  std::sort(selected.begin(), selected.end());
  RecoveryReport b = recovery_metrics(selected, u);
  CHECK(a.capture_fraction == b.capture_fraction);
  CHECK(a.decile_capture == b.decile_capture);
}

TEST_CASE("empty true support is rejected") {
  Vector u = Vector::Zero(10);
  CHECK_THROWS_AS(recovery_metrics({1, 2}, u), EmptyTrueSupport);
}

}  // TEST_SUITE
