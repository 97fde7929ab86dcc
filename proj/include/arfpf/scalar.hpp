#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <type_traits>

namespace arfpf {

// Exact rationals (GMP-backed). Expression templates are disabled so the
// type behaves as a plain value inside Eigen kernels.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
inline constexpr bool is_exact_v = !std::is_floating_point_v<Scalar>;

// Parses "p", "p/q" or "-p/q"; throws InputError on malformed text or q = 0.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& r);

std::string format_scalar(const Rational& r);
std::string format_scalar(double x);

}  // namespace arfpf
