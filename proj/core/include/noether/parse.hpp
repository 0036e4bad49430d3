#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noether/expr.hpp"

namespace noether {

using ParameterMap = std::map<std::string, Rational>;

/// Parses the problem-file expression language.
///
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := ('-'|'+') unary | base ('^' exponent)?
///   base   := int | 't' | ident "'"{1..6} | 'D(' ident ',' int ')'
///           | ('sin'|'cos'|'exp') '(' linear ')' | '(' expr ')'
///
/// Parameters are substituted by their values at parse time. Division is
/// accepted only by a single-term divisor (it becomes a negative power).
/// Functions take a rational linear combination of t and coordinates.
Expr parse(std::string_view text, const std::vector<std::string>& coords, const ParameterMap& params = {});

/// Canonical text form; parse(print(e)) == e. Derivatives use D(x,k).
std::string print(const Expr& e, const std::vector<std::string>& coords = {});

std::string print(const LinearArg& arg, const std::vector<std::string>& coords = {});

/// Interprets an expression as a linear form in t and order-0 coordinates.
std::optional<LinearArg> as_linear_arg(const Expr& e);

/// Default coordinate name used when no name table is given.
std::string coordinate_name(int coord, const std::vector<std::string>& coords);

}  // namespace noether
