#pragma once

// CPLEX LP text for MipModel: Minimize / Subject To / Bounds / Binaries / End.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vsp/exact/mip.hpp"

namespace vsp::exact {

class LpParseError : public std::runtime_error {
 public:
  LpParseError(int line, const std::string& what)
      : std::runtime_error("LP line " + std::to_string(line) + ": " + what) {}
};

namespace lp_detail {

inline std::string number(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string expression(const std::vector<Term>& terms) {
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const double c = terms[k].coef;
    const double mag = std::fabs(c);
    if (k == 0) {
      if (c < 0) out += "- ";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1) out += number(mag) + " ";
    out += terms[k].var;
  }
  return out;
}

inline const char* sense(Sense s) {
  switch (s) {
    case Sense::LessEqual: return "<=";
    case Sense::GreaterEqual: return ">=";
    case Sense::Equal: return "=";
  }
  return "=";
}

inline std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline bool is_number_token(const std::string& tok) {
  if (tok.empty()) return false;
  const std::string l = lower(tok);
  if (l == "inf" || l == "+inf" || l == "-inf" || l == "infinity" || l == "+infinity" ||
      l == "-infinity")
    return true;
  const char c = tok[0];
  return std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
         ((c == '+' || c == '-') && tok.size() > 1);
}

inline double parse_number(const std::string& tok, int line) {
  const std::string l = lower(tok);
  if (l == "inf" || l == "+inf" || l == "infinity" || l == "+infinity")
    return std::numeric_limits<double>::infinity();
  if (l == "-inf" || l == "-infinity") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw LpParseError(line, "bad number '" + tok + "'");
  }
}

/// Splits "3 x + 2.5 y - z" style text into tokens, detaching operators.
inline std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> out;
  std::size_t k = 0;
  while (k < s.size()) {
    const char c = s[k];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
    } else if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      if (k + 1 < s.size() && s[k + 1] == '=') op += '=';
      if (op == "=<") op = "<=";
      if (op == "=>") op = ">=";
      out.push_back(op == "<" ? "<=" : op == ">" ? ">=" : op);
      k += op.size();
    } else if (c == '+' || c == '-') {
      out.emplace_back(1, c);
      ++k;
    } else {
      std::size_t e = k;
      while (e < s.size() && !std::isspace(static_cast<unsigned char>(s[e])) &&
             s[e] != '<' && s[e] != '>' && s[e] != '=' &&
             !((s[e] == '+' || s[e] == '-') && e > k &&
               !(std::tolower(static_cast<unsigned char>(s[e - 1])) == 'e' &&
                 std::isdigit(static_cast<unsigned char>(s[k])))))
        ++e;
      out.push_back(s.substr(k, e - k));
      k = e;
    }
  }
  return out;
}

/// Glues a leading sign onto the number that follows it, for bound lines.
inline std::vector<std::string> merge_signs(const std::vector<std::string>& tok) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < tok.size(); ++k) {
    const bool sign = tok[k] == "+" || tok[k] == "-";
    const bool after_op = out.empty() || out.back() == "<=" || out.back() == ">=" ||
                          out.back() == "=";
    if (sign && after_op && k + 1 < tok.size() && is_number_token(tok[k + 1])) {
      out.push_back(tok[k] + tok[k + 1]);
      ++k;
    } else {
      out.push_back(tok[k]);
    }
  }
  return out;
}

/// Linear terms from tokens in [from, to).
inline std::vector<Term> parse_terms(const std::vector<std::string>& tok, std::size_t from,
                                     std::size_t to, int line) {
  std::vector<Term> terms;
  double sign = 1;
  std::optional<double> coef;
  for (std::size_t k = from; k < to; ++k) {
    const std::string& t = tok[k];
    if (t == "+") continue;
    if (t == "-") {
      sign = -sign;
      continue;
    }
    if (is_number_token(t) && !coef) {
      coef = parse_number(t, line);
      continue;
    }
    terms.push_back({sign * coef.value_or(1.0), t});
    sign = 1;
    coef.reset();
  }
  if (coef) throw LpParseError(line, "constant term in expression");
  return terms;
}

}  // namespace lp_detail

inline std::string write_lp(const MipModel& model) {
  using namespace lp_detail;
  std::ostringstream out;
  out << "\\ vehicle scheduling: minimize (weighted) number of tardy vehicles\n";
  out << "Minimize\n obj: " << expression(model.objective) << "\n";
  out << "Subject To\n";
  for (const MipRow& r : model.rows)
    out << " " << r.name << ": " << expression(r.terms) << " " << sense(r.sense) << " "
        << number(r.rhs) << "\n";
  out << "Bounds\n";
  for (const MipVariable& v : model.variables) {
    if (v.type == VarType::Binary) continue;
    if (v.lower == 0 && std::isinf(v.upper)) continue;
    if (std::isinf(v.lower) && std::isinf(v.upper)) {
      out << " " << v.name << " free\n";
    } else if (std::isinf(v.upper)) {
      out << " " << v.name << " >= " << number(v.lower) << "\n";
    } else {
      out << " " << number(v.lower) << " <= " << v.name << " <= " << number(v.upper) << "\n";
    }
  }
  out << "Binaries\n";
  for (const MipVariable& v : model.variables)
    if (v.type == VarType::Binary) out << " " << v.name << "\n";
  out << "End\n";
  return out.str();
}

/// Reads the LP dialect produced by write_lp (and common variations of it).
/// Variables keep the order in which they are first seen.
inline MipModel parse_lp(const std::string& text) {
  using namespace lp_detail;
  enum class Section { None, Objective, Constraints, Bounds, Binaries, Generals, End };
  MipModel model;
  std::vector<std::string> order;
  std::map<std::string, MipVariable> vars;
  auto touch = [&](const std::string& name) -> MipVariable& {
    auto [it, inserted] = vars.try_emplace(name, MipVariable{name});
    if (inserted) order.push_back(name);
    return it->second;
  };

  Section section = Section::None;
  std::istringstream in(text);
  std::string raw;
  std::string pending;  // constraint text spanning several lines
  int pending_line = 0;
  int line_no = 0;

  auto flush_constraint = [&](const std::string& textline, int ln) {
    std::string body = textline;
    std::string name;
    if (const auto colon = body.find(':'); colon != std::string::npos) {
      name = trim(body.substr(0, colon));
      body = body.substr(colon + 1);
    }
    const auto tok = tokenize(body);
    std::size_t op = tok.size();
    for (std::size_t k = 0; k < tok.size(); ++k)
      if (tok[k] == "<=" || tok[k] == ">=" || tok[k] == "=") {
        op = k;
        break;
      }
    if (op == tok.size() || op + 1 >= tok.size())
      throw LpParseError(ln, "constraint without a relation and right-hand side");
    MipRow row;
    row.name = name.empty() ? "r" + std::to_string(model.rows.size() + 1) : name;
    row.terms = parse_terms(tok, 0, op, ln);
    row.sense = tok[op] == "<=" ? Sense::LessEqual
                : tok[op] == ">=" ? Sense::GreaterEqual
                                  : Sense::Equal;
    double sign = 1;
    std::size_t k = op + 1;
    for (; k < tok.size() && (tok[k] == "+" || tok[k] == "-"); ++k)
      if (tok[k] == "-") sign = -sign;
    if (k + 1 != tok.size()) throw LpParseError(ln, "malformed right-hand side");
    row.rhs = sign * parse_number(tok[k], ln);
    for (const Term& t : row.terms) touch(t.var);
    model.rows.push_back(std::move(row));
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto bs = line.find('\\'); bs != std::string::npos) line = line.substr(0, bs);
    line = trim(line);
    if (line.empty()) continue;
    const std::string key = lower(line);
    if (key == "minimize" || key == "minimum" || key == "min") {
      section = Section::Objective;
      continue;
    }
    if (key == "maximize" || key == "maximum" || key == "max")
      throw LpParseError(line_no, "only minimization models are supported");
    if (key == "subject to" || key == "such that" || key == "st" || key == "s.t.") {
      section = Section::Constraints;
      continue;
    }
    if (key == "bounds" || key == "bound") {
      section = Section::Bounds;
      continue;
    }
    if (key == "binaries" || key == "binary" || key == "bin") {
      section = Section::Binaries;
      continue;
    }
    if (key == "generals" || key == "general" || key == "gen")
      throw LpParseError(line_no, "general integer variables are not supported");
    if (key == "end") {
      section = Section::End;
      continue;
    }

    switch (section) {
      case Section::Objective: {
        std::string body = line;
        if (const auto colon = body.find(':'); colon != std::string::npos)
          body = body.substr(colon + 1);
        const auto tok = tokenize(body);
        auto terms = parse_terms(tok, 0, tok.size(), line_no);
        for (const Term& t : terms) touch(t.var);
        model.objective.insert(model.objective.end(), terms.begin(), terms.end());
        break;
      }
      case Section::Constraints: {
        pending += (pending.empty() ? "" : " ") + line;
        if (pending_line == 0) pending_line = line_no;
        const auto tok = tokenize(pending.substr(
            pending.find(':') == std::string::npos ? 0 : pending.find(':') + 1));
        bool complete = false;
        for (std::size_t k = 0; k + 1 < tok.size(); ++k)
          if ((tok[k] == "<=" || tok[k] == ">=" || tok[k] == "=") &&
              is_number_token(tok.back()))
            complete = true;
        if (complete) {
          flush_constraint(pending, pending_line);
          pending.clear();
          pending_line = 0;
        }
        break;
      }
      case Section::Bounds: {
        const auto tok = merge_signs(tokenize(line));
        if (tok.size() == 2 && lower(tok[1]) == "free") {
          auto& v = touch(tok[0]);
          v.lower = -std::numeric_limits<double>::infinity();
          v.upper = std::numeric_limits<double>::infinity();
        } else if (tok.size() == 5 && tok[1] == "<=" && tok[3] == "<=") {
          auto& v = touch(tok[2]);
          v.lower = parse_number(tok[0], line_no);
          v.upper = parse_number(tok[4], line_no);
        } else if (tok.size() == 3 && !is_number_token(tok[0])) {
          auto& v = touch(tok[0]);
          const double x = parse_number(tok[2], line_no);
          if (tok[1] == ">=") v.lower = x;
          else if (tok[1] == "<=") v.upper = x;
          else v.lower = v.upper = x;
        } else if (tok.size() == 3) {
          auto& v = touch(tok[2]);
          const double x = parse_number(tok[0], line_no);
          if (tok[1] == "<=") v.lower = x;
          else if (tok[1] == ">=") v.upper = x;
          else v.lower = v.upper = x;
        } else {
          throw LpParseError(line_no, "unrecognised bound '" + line + "'");
        }
        break;
      }
      case Section::Binaries: {
        for (const auto& name : tokenize(line)) {
          auto& v = touch(name);
          v.type = VarType::Binary;
          v.lower = 0;
          v.upper = 1;
        }
        break;
      }
      case Section::None:
        throw LpParseError(line_no, "content before the objective section");
      case Section::End:
      case Section::Generals:
        throw LpParseError(line_no, "content after End");
    }
  }
  if (!pending.empty()) throw LpParseError(pending_line, "unterminated constraint");
  if (section != Section::End) throw LpParseError(line_no, "missing End");
  for (const auto& name : order) model.variables.push_back(vars.at(name));
  return model;
}

}  // namespace vsp::exact
