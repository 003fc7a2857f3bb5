#include "hermite_mc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hermite_mc/numeric.hpp"

namespace hermite_mc {

namespace wf = weight_family;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void check(bool ok, const char* what)
{
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

std::string fmt_num(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

WeightSequenceSpec::WeightSequenceSpec(Family family) : family_(std::move(family))
{
    std::visit(Overloaded{
                   [](const wf::Constant& f) {
                       check(positive_finite(f.c), "constant weights: c must be positive");
                   },
                   [](const wf::PolynomialDecay& f) {
                       check(positive_finite(f.c), "polynomial weights: c must be positive");
                       check(std::isfinite(f.beta), "polynomial weights: beta must be finite");
                   },
                   [](const wf::Geometric& f) {
                       check(positive_finite(f.c), "geometric weights: c must be positive");
                       check(positive_finite(f.q), "geometric weights: q must be positive");
                   },
                   [](const wf::RootGeometric& f) {
                       check(positive_finite(f.c), "root-geometric weights: c must be positive");
                   },
                   [](const wf::AffinePolynomial& f) {
                       check(std::isfinite(f.base) && f.base >= 0.0,
                             "affine-polynomial weights: base must be >= 0");
                       check(std::isfinite(f.c) && f.c >= 0.0,
                             "affine-polynomial weights: c must be >= 0");
                       check(f.base + f.c > 0.0, "affine-polynomial weights: base + c must be positive");
                       check(std::isfinite(f.beta), "affine-polynomial weights: beta must be finite");
                   },
                   [](const wf::Table& f) {
                       check(!f.values.empty(), "table weights: at least one value required");
                       for (double v : f.values) {
                           check(positive_finite(v), "table weights: values must be positive");
                       }
                   },
               },
               family_);
}

WeightSequenceSpec WeightSequenceSpec::constant(double c) { return WeightSequenceSpec(wf::Constant{c}); }

WeightSequenceSpec WeightSequenceSpec::polynomial_decay(double c, double beta)
{
    return WeightSequenceSpec(wf::PolynomialDecay{c, beta});
}

WeightSequenceSpec WeightSequenceSpec::geometric(double c, double q)
{
    return WeightSequenceSpec(wf::Geometric{c, q});
}

WeightSequenceSpec WeightSequenceSpec::root_geometric(double c)
{
    return WeightSequenceSpec(wf::RootGeometric{c});
}

WeightSequenceSpec WeightSequenceSpec::affine_polynomial(double base, double c, double beta)
{
    return WeightSequenceSpec(wf::AffinePolynomial{base, c, beta});
}

WeightSequenceSpec WeightSequenceSpec::table(std::vector<double> values, wf::TailRule tail)
{
    return WeightSequenceSpec(wf::Table{std::move(values), tail});
}

double WeightSequenceSpec::value(std::size_t j) const
{
    if (j == 0) {
        throw std::out_of_range("weight sequences are indexed from 1");
    }
    const double jd = static_cast<double>(j);
    return std::visit(Overloaded{
                          [](const wf::Constant& f) { return f.c; },
                          [jd](const wf::PolynomialDecay& f) { return f.c * std::pow(jd, -f.beta); },
                          [jd](const wf::Geometric& f) { return f.c * std::pow(f.q, jd); },
                          [jd](const wf::RootGeometric& f) { return std::pow(f.c, 1.0 / jd); },
                          [jd](const wf::AffinePolynomial& f) {
                              return f.base + f.c * std::pow(jd, -f.beta);
                          },
                          [j](const wf::Table& f) {
                              return j <= f.values.size() ? f.values[j - 1] : f.values.back();
                          },
                      },
                      family_);
}

double WeightSequenceSpec::log_value(std::size_t j) const
{
    if (j == 0) {
        throw std::out_of_range("weight sequences are indexed from 1");
    }
    const double jd = static_cast<double>(j);
    return std::visit(Overloaded{
                          [](const wf::Constant& f) { return std::log(f.c); },
                          [jd](const wf::PolynomialDecay& f) {
                              return std::log(f.c) - f.beta * std::log(jd);
                          },
                          [jd](const wf::Geometric& f) { return std::log(f.c) + jd * std::log(f.q); },
                          [jd](const wf::RootGeometric& f) { return std::log(f.c) / jd; },
                          [jd](const wf::AffinePolynomial& f) {
                              return std::log1p((f.base - 1.0) + f.c * std::pow(jd, -f.beta));
                          },
                          [j](const wf::Table& f) {
                              return std::log(j <= f.values.size() ? f.values[j - 1] : f.values.back());
                          },
                      },
                      family_);
}

std::vector<double> WeightSequenceSpec::values(std::size_t count) const
{
    std::vector<double> out(count);
    for (std::size_t j = 1; j <= count; ++j) {
        out[j - 1] = value(j);
    }
    return out;
}

bool WeightSequenceSpec::is_nonincreasing() const
{
    return std::visit(Overloaded{
                          [](const wf::Constant&) { return true; },
                          [](const wf::PolynomialDecay& f) { return f.beta >= 0.0; },
                          [](const wf::Geometric& f) { return f.q <= 1.0; },
                          [](const wf::RootGeometric& f) { return f.c >= 1.0; },
                          [](const wf::AffinePolynomial& f) { return f.beta >= 0.0 || f.c == 0.0; },
                          [](const wf::Table& f) {
                              return std::is_sorted(f.values.rbegin(), f.values.rend());
                          },
                      },
                      family_);
}

std::string WeightSequenceSpec::family_name() const
{
    return std::visit(Overloaded{
                          [](const wf::Constant&) { return std::string("constant"); },
                          [](const wf::PolynomialDecay&) { return std::string("polynomial"); },
                          [](const wf::Geometric&) { return std::string("geometric"); },
                          [](const wf::RootGeometric&) { return std::string("root_geometric"); },
                          [](const wf::AffinePolynomial&) { return std::string("affine_polynomial"); },
                          [](const wf::Table&) { return std::string("table"); },
                      },
                      family_);
}

std::string WeightSequenceSpec::describe() const
{
    return std::visit(
        Overloaded{
            [](const wf::Constant& f) { return "constant(c=" + fmt_num(f.c) + ")"; },
            [](const wf::PolynomialDecay& f) {
                return "polynomial(c=" + fmt_num(f.c) + ",beta=" + fmt_num(f.beta) + ")";
            },
            [](const wf::Geometric& f) {
                return "geometric(c=" + fmt_num(f.c) + ",q=" + fmt_num(f.q) + ")";
            },
            [](const wf::RootGeometric& f) { return "root_geometric(c=" + fmt_num(f.c) + ")"; },
            [](const wf::AffinePolynomial& f) {
                return "affine_polynomial(base=" + fmt_num(f.base) + ",c=" + fmt_num(f.c)
                       + ",beta=" + fmt_num(f.beta) + ")";
            },
            [](const wf::Table& f) {
                std::string out = "table[";
                for (std::size_t i = 0; i < f.values.size(); ++i) {
                    out += (i ? ";" : "") + fmt_num(f.values[i]);
                }
                return out + "|constant_last]";
            },
        },
        family_);
}

// ---------------------------------------------------------------------------

FiniteSmoothnessSpace::FiniteSmoothnessSpace(std::size_t s, double alpha, WeightSequenceSpec gamma)
    : s_(s), alpha_(alpha), gamma_(std::move(gamma))
{
    check(s >= 1, "finite-smoothness space: dimension must be >= 1");
    check(std::isfinite(alpha) && alpha > 1.0, "finite-smoothness space: alpha must exceed 1");
    check(gamma_.is_nonincreasing(), "finite-smoothness space: gamma must be nonincreasing");
    gamma_values_ = gamma_.values(s);
}

AnalyticSpace::AnalyticSpace(std::size_t s, double omega, WeightSequenceSpec a, WeightSequenceSpec b)
    : s_(s), omega_(omega), a_(std::move(a)), b_(std::move(b))
{
    check(s >= 1, "analytic space: dimension must be >= 1");
    check(omega > 0.0 && omega < 1.0, "analytic space: omega must lie in (0,1)");
    a_values_ = a_.values(s);
    b_values_ = b_.values(s);
    for (std::size_t j = 0; j < s; ++j) {
        check(a_values_[j] > 0.0, "analytic space: a_j must be positive");
        check(b_values_[j] >= 1.0, "analytic space: b_j must be >= 1");
    }
    a_min_ = *std::min_element(a_values_.begin(), a_values_.end());
}

bool AnalyticSpace::all_b_one() const noexcept
{
    return std::all_of(b_values_.begin(), b_values_.end(), [](double b) { return b == 1.0; });
}

std::size_t HermiteSpace::dim() const noexcept
{
    return std::visit([](const auto& sp) { return sp.dim(); }, space_);
}

HermiteSpace HermiteSpace::with_dim(std::size_t s) const
{
    return std::visit(Overloaded{
                          [s](const FiniteSmoothnessSpace& sp) {
                              return HermiteSpace(FiniteSmoothnessSpace(s, sp.alpha(), sp.gamma()));
                          },
                          [s](const AnalyticSpace& sp) {
                              return HermiteSpace(AnalyticSpace(s, sp.omega(), sp.a(), sp.b()));
                          },
                      },
                      space_);
}

double HermiteSpace::coordinate_weight(std::size_t coord, std::uint32_t k) const
{
    return std::visit(Overloaded{
                          [&](const FiniteSmoothnessSpace& sp) {
                              return k == 0 ? 1.0
                                            : sp.gamma_at(coord)
                                                  * std::pow(static_cast<double>(k), -sp.alpha());
                          },
                          [&](const AnalyticSpace& sp) {
                              return std::pow(sp.omega(),
                                              sp.a_at(coord)
                                                  * std::pow(static_cast<double>(k), sp.b_at(coord)));
                          },
                      },
                      space_);
}

std::string HermiteSpace::family_name() const
{
    return is_analytic() ? "analytic" : "finite_smoothness";
}

std::string HermiteSpace::describe() const
{
    return std::visit(Overloaded{
                          [](const FiniteSmoothnessSpace& sp) {
                              return "finite_smoothness(s=" + std::to_string(sp.dim())
                                     + ",alpha=" + fmt_num(sp.alpha())
                                     + ",gamma=" + sp.gamma().describe() + ")";
                          },
                          [](const AnalyticSpace& sp) {
                              return "analytic(s=" + std::to_string(sp.dim())
                                     + ",omega=" + fmt_num(sp.omega()) + ",a=" + sp.a().describe()
                                     + ",b=" + sp.b().describe() + ")";
                          },
                      },
                      space_);
}

// ---------------------------------------------------------------------------

double r_value(const HermiteSpace& space, const MultiIndex& k)
{
    if (k.dim() != space.dim()) {
        throw std::invalid_argument("r_value: index dimension does not match space");
    }
    return std::visit(Overloaded{
                          [&](const FiniteSmoothnessSpace& sp) {
                              double r = 1.0;
                              for (const auto& e : k.entries()) {
                                  r *= sp.gamma_at(e.coord)
                                       * std::pow(static_cast<double>(e.exponent), -sp.alpha());
                              }
                              return r;
                          },
                          [&](const AnalyticSpace& sp) {
                              double exponent = 0.0;
                              for (const auto& e : k.entries()) {
                                  exponent += sp.a_at(e.coord)
                                              * std::pow(static_cast<double>(e.exponent), sp.b_at(e.coord));
                              }
                              return std::pow(sp.omega(), exponent);
                          },
                      },
                      space.variant());
}

MaxWeight max_r_nonzero(const HermiteSpace& space)
{
    const std::size_t s = space.dim();
    MultiIndex argmax = std::visit(Overloaded{
                                       [s](const FiniteSmoothnessSpace& sp) {
                                           double product = 1.0;
                                           double best = -std::numeric_limits<double>::infinity();
                                           std::size_t best_len = 1;
                                           for (std::size_t m = 1; m <= s; ++m) {
                                               product *= sp.gamma_at(m - 1);
                                               if (product > best) {
                                                   best = product;
                                                   best_len = m;
                                               }
                                           }
                                           return MultiIndex::prefix_ones(s, best_len);
                                       },
                                       [s](const AnalyticSpace& sp) {
                                           std::size_t best = 0;
                                           for (std::size_t j = 1; j < s; ++j) {
                                               if (sp.a_at(j) < sp.a_at(best)) {
                                                   best = j;
                                               }
                                           }
                                           return MultiIndex::unit(s, best);
                                       },
                                   },
                                   space.variant());
    const double value = r_value(space, argmax);
    return MaxWeight{value, std::move(argmax)};
}

double summability_constant(const HermiteSpace& space, double tol)
{
    if (!(tol > 0.0)) {
        throw std::invalid_argument("summability_constant: tol must be positive");
    }
    return std::visit(Overloaded{
                          [tol](const FiniteSmoothnessSpace& sp) {
                              const double zeta = riemann_zeta(sp.alpha(), tol);
                              double product = 1.0;
                              for (std::size_t j = 0; j < sp.dim(); ++j) {
                                  product *= 1.0 + sp.gamma_at(j) * zeta;
                              }
                              return product;
                          },
                          [tol](const AnalyticSpace& sp) {
                              double product = 1.0;
                              for (std::size_t j = 0; j < sp.dim(); ++j) {
                                  const double a = sp.a_at(j);
                                  const double b = sp.b_at(j);
                                  const double ratio = std::pow(sp.omega(), a);
                                  CompensatedSum sum;
                                  for (std::uint32_t k = 0;; ++k) {
                                      const double kd = static_cast<double>(k);
                                      sum.add(std::pow(sp.omega(), a * std::pow(kd, b)));
                                      // k^b >= k, so the tail is dominated by a geometric series
                                      const double tail = std::pow(ratio, kd + 1.0) / (1.0 - ratio);
                                      if (tail <= tol) {
                                          break;
                                      }
                                  }
                                  product *= sum.value();
                              }
                              return product;
                          },
                      },
                      space.variant());
}

} // namespace hermite_mc
