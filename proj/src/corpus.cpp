#include "pqb/corpus.hpp"

#include <cmath>
#include <numbers>

namespace pqb {

namespace {

std::vector<FunctionBundle> build_corpus() {
  using std::numbers::pi;
  std::vector<FunctionBundle> out;
  out.push_back({"one",
                 [](double) { return 1.0; },
                 {[](double) { return 0.0; }, [](double) { return 0.0; }, [](double) { return 0.0; },
                  [](double) { return 0.0; }},
                 LipschitzClass{1.0, 1.0}});
  out.push_back({"t",
                 [](double x) { return x; },
                 {[](double) { return 1.0; }, [](double) { return 0.0; }, [](double) { return 0.0; },
                  [](double) { return 0.0; }},
                 LipschitzClass{1.0, 1.0}});
  out.push_back({"t2",
                 [](double x) { return x * x; },
                 {[](double x) { return 2.0 * x; }, [](double) { return 2.0; },
                  [](double) { return 0.0; }, [](double) { return 0.0; }},
                 LipschitzClass{1.0, 1.0}});
  out.push_back({"t3",
                 [](double x) { return x * x * x; },
                 {[](double x) { return 3.0 * x * x; }, [](double x) { return 6.0 * x; },
                  [](double) { return 6.0; }, [](double) { return 0.0; }},
                 LipschitzClass{1.0, 1.0}});
  out.push_back({"sin_pi",
                 [](double x) { return std::sin(pi * x); },
                 {[](double x) { return pi * std::cos(pi * x); },
                  [](double x) { return -pi * pi * std::sin(pi * x); },
                  [](double x) { return -pi * pi * pi * std::cos(pi * x); },
                  [](double x) { return pi * pi * pi * pi * std::sin(pi * x); }},
                 LipschitzClass{pi * pi * pi * pi * pi, 1.0}});
  out.push_back({"exp",
                 [](double x) { return std::exp(x); },
                 {[](double x) { return std::exp(x); }, [](double x) { return std::exp(x); },
                  [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); }},
                 LipschitzClass{std::numbers::e, 1.0}});
  out.push_back({"abs_half",
                 [](double x) { return std::abs(x - 0.5); },
                 {},
                 LipschitzClass{1.0, 1.0}});
  out.push_back({"sqrt_abs_half",
                 [](double x) { return std::sqrt(std::abs(x - 0.5)); },
                 {},
                 LipschitzClass{1.0, 0.5}});
  return out;
}

}  // namespace

const std::vector<FunctionBundle>& corpus() {
  static const std::vector<FunctionBundle> c = build_corpus();
  return c;
}

const FunctionBundle* find_corpus(const std::string& name) {
  for (const auto& b : corpus())
    if (b.name == name) return &b;
  return nullptr;
}

}  // namespace pqb
