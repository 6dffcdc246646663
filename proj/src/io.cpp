// ccvp - certificates and constraint qualifications for cone-constrained
//        vector optimization
// Copyright (c) 2026 ccvp Contributors
// Licensed under Apache 2.0

#include "ccvp/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ccvp/errors.hpp"

namespace ccvp {

namespace {

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

double parse_real(const std::string& w, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(w, &used);
  } catch (const std::exception&) {
    throw ParseError("expected a real number, got '" + w + "'", line, 1);
  }
  if (used != w.size())
    throw ParseError("expected a real number, got '" + w + "'", line, 1);
  return v;
}

Vec parse_reals(const std::vector<std::string>& words, std::size_t from, int line) {
  Vec v;
  for (std::size_t i = from; i < words.size(); ++i) v.push_back(parse_real(words[i], line));
  return v;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file: " + path);
  return in;
}

}  // namespace

Problem read_problem(std::istream& in, const std::string& source_name) {
  std::vector<std::string> vars;
  std::vector<std::string> objective_texts;
  std::vector<int> objective_lines;
  std::vector<std::string> constraint_texts;
  std::vector<int> constraint_lines;
  std::vector<Cone> cone_factors;
  bool declared_convex = false;
  std::map<std::string, Vec> points;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = strip_comment(raw);
    std::istringstream is(line);
    std::string keyword;
    if (!(is >> keyword)) continue;
    std::string rest;
    std::getline(is, rest);

    if (keyword == "vars") {
      if (!vars.empty())
        throw ParseError("duplicate 'vars' line", lineno, 1);
      vars = split_words(rest);
      if (vars.empty()) throw ParseError("'vars' needs at least one name", lineno, 1);
    } else if (keyword == "objective") {
      objective_texts.push_back(rest);
      objective_lines.push_back(lineno);
    } else if (keyword == "constraint") {
      constraint_texts.push_back(rest);
      constraint_lines.push_back(lineno);
    } else if (keyword == "cone") {
      const auto words = split_words(rest);
      if (words.size() != 2)
        throw ParseError("'cone' expects a kind and a dimension", lineno, 1);
      const long dim = std::strtol(words[1].c_str(), nullptr, 10);
      if (dim < 1) throw ParseError("cone dimension must be positive", lineno, 1);
      if (words[0] == "orthant") cone_factors.push_back(Cone::orthant(static_cast<std::size_t>(dim)));
      else if (words[0] == "zero") cone_factors.push_back(Cone::zero(static_cast<std::size_t>(dim)));
      else if (words[0] == "soc") cone_factors.push_back(Cone::second_order(static_cast<std::size_t>(dim)));
      else throw ParseError("unknown cone kind '" + words[0] + "'", lineno, 1);
    } else if (keyword == "convex") {
      const auto words = split_words(rest);
      if (words.size() != 1 || (words[0] != "true" && words[0] != "false"))
        throw ParseError("'convex' expects true or false", lineno, 1);
      declared_convex = words[0] == "true";
    } else if (keyword == "point") {
      const auto words = split_words(rest);
      if (words.size() < 2)
        throw ParseError("'point' expects a name and coordinates", lineno, 1);
      points[words[0]] = parse_reals(words, 1, lineno);
    } else {
      throw ParseError("unknown keyword '" + keyword + "' in " + source_name, lineno, 1);
    }
  }

  if (vars.empty()) throw ParseError("missing 'vars' line in " + source_name, lineno, 1);
  if (objective_texts.empty())
    throw ParseError("missing 'objective' line in " + source_name, lineno, 1);
  if (constraint_texts.empty())
    throw ParseError("missing 'constraint' line in " + source_name, lineno, 1);
  if (cone_factors.empty())
    throw ParseError("missing 'cone' line in " + source_name, lineno, 1);

  std::vector<Polynomial> objectives;
  for (std::size_t i = 0; i < objective_texts.size(); ++i)
    objectives.push_back(parse_expression(objective_texts[i], vars, objective_lines[i]));
  std::vector<Polynomial> constraints;
  for (std::size_t i = 0; i < constraint_texts.size(); ++i)
    constraints.push_back(parse_expression(constraint_texts[i], vars, constraint_lines[i]));

  Cone cone = Cone::product(cone_factors);
  if (cone.dim() != constraints.size())
    throw ParseError("cone dimensions sum to " + std::to_string(cone.dim()) +
                         " but there are " + std::to_string(constraints.size()) +
                         " constraint components",
                     lineno, 1);

  for (const auto& [name, pt] : points)
    if (pt.size() != vars.size())
      throw ParseError("point '" + name + "' has " + std::to_string(pt.size()) +
                           " coordinates, expected " + std::to_string(vars.size()),
                       lineno, 1);

  return Problem(vars, std::move(objectives), std::move(constraints), std::move(cone),
                 declared_convex, std::move(points));
}

Problem read_problem_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_problem(in, path);
}

AkktCertificate read_certificate(std::istream& in, const std::string& source_name) {
  AkktCertificate cert;
  bool have_lambda = false, have_limit = false;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = strip_comment(raw);
    auto words = split_words(line);
    if (words.empty()) continue;
    const std::string keyword = words[0];

    if (keyword == "lambda") {
      cert.lambda = parse_reals(words, 1, lineno);
      have_lambda = true;
    } else if (keyword == "limit") {
      cert.limit = parse_reals(words, 1, lineno);
      have_limit = true;
    } else if (keyword == "step") {
      AkktCertificate::Step step;
      bool after_sep = false;
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i] == ";") {
          if (after_sep) throw ParseError("step line has two ';' separators", lineno, 1);
          after_sep = true;
          continue;
        }
        (after_sep ? step.mu : step.x).push_back(parse_real(words[i], lineno));
      }
      if (!after_sep) throw ParseError("step line is missing the ';' separator", lineno, 1);
      cert.steps.push_back(std::move(step));
    } else {
      throw ParseError("unknown keyword '" + keyword + "' in " + source_name, lineno, 1);
    }
  }

  if (!have_lambda) throw ParseError("missing 'lambda' line in " + source_name, lineno, 1);
  if (!have_limit) throw ParseError("missing 'limit' line in " + source_name, lineno, 1);
  if (cert.steps.empty()) throw ParseError("missing 'step' lines in " + source_name, lineno, 1);
  return cert;
}

AkktCertificate read_certificate_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_certificate(in, path);
}

namespace {

void write_reals(std::ostream& out, const Vec& v) {
  char buf[40];
  for (double x : v) {
    std::snprintf(buf, sizeof(buf), " %.17g", x);
    out << buf;
  }
}

}  // namespace

void write_certificate(std::ostream& out, const AkktCertificate& cert) {
  out << "lambda";
  write_reals(out, cert.lambda);
  out << "\nlimit";
  write_reals(out, cert.limit);
  out << "\n";
  for (const auto& st : cert.steps) {
    out << "step";
    write_reals(out, st.x);
    out << " ;";
    write_reals(out, st.mu);
    out << "\n";
  }
}

void write_certificate_file(const std::string& path, const AkktCertificate& cert) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write file: " + path);
  write_certificate(out, cert);
}

}  // namespace ccvp
