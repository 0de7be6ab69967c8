#include "problem.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace cyclebv::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ProblemError(path + ": " + what);
}

// Maps a byte offset from the JSON parser to a 1-based line:column pair.
std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const json& field(const std::string& path, const json& j,
                  const std::string& name) {
  auto it = j.find(name);
  if (it == j.end()) fail(path, "missing field \"" + name + "\"");
  return *it;
}

int int_field(const std::string& path, const json& j, const std::string& name) {
  const json& v = field(path, j, name);
  if (!v.is_number_integer())
    fail(path, "field \"" + name + "\" must be an integer");
  return v.get<int>();
}

std::string string_field(const std::string& path, const json& j,
                         const std::string& name) {
  const json& v = field(path, j, name);
  if (!v.is_string()) fail(path, "field \"" + name + "\" must be a string");
  return v.get<std::string>();
}

Rational rational_entry(const std::string& path, const json& v,
                        const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return rational_from_string(v.get<std::string>());
    } catch (const std::exception& e) {
      fail(path, where + ": " + e.what());
    }
  }
  fail(path, where + " must be an integer or a rational string");
}

SuperBasis parse_basis(const std::string& path, const json& j) {
  SuperBasis basis;
  if (!j.is_array() || j.empty())
    fail(path, "superspace.basis must be a non-empty array");
  for (const json& entry : j) {
    basis.labels.push_back(string_field(path, entry, "label"));
    const int p = int_field(path, entry, "parity");
    if (p != 0 && p != 1)
      fail(path, "basis parity must be 0 or 1, got " + std::to_string(p));
    basis.parities.push_back(p);
  }
  return basis;
}

PairingForm parse_form(const std::string& path, const json& j) {
  PairingForm form;
  const std::string flag = string_field(path, j, "flag");
  if (flag == "even")
    form.parity = FormParity::Even;
  else if (flag == "odd")
    form.parity = FormParity::Odd;
  else
    fail(path, "form.flag must be \"even\" or \"odd\", got \"" + flag + "\"");
  const json& rows = field(path, j, "entries");
  if (!rows.is_array()) fail(path, "form.entries must be an array of rows");
  for (const json& row : rows) {
    if (!row.is_array()) fail(path, "form.entries rows must be arrays");
    std::vector<Rational> out;
    for (const json& v : row)
      out.push_back(rational_entry(path, v, "form entry"));
    form.entries.push_back(std::move(out));
  }
  return form;
}

GradedAction parse_action(const std::string& path, const json& j,
                          const SuperBasis& basis, FormParity flavor) {
  GradedAction s;
  s.flavor = flavor;
  if (!j.is_array()) fail(path, "action must be an array of components");
  for (const json& comp : j) {
    ActionKey key{int_field(path, comp, "g"), int_field(path, comp, "i"),
                  int_field(path, comp, "n")};
    BVElement e(flavor);
    const json& monomials = field(path, comp, "monomials");
    if (!monomials.is_array())
      fail(path, "action monomials must be an array");
    for (const json& mono : monomials) {
      const json& cycles = field(path, mono, "cycles");
      if (!cycles.is_array() || cycles.empty())
        fail(path, "monomial cycles must be a non-empty array");
      std::vector<CyclicWord> words;
      for (const json& cyc : cycles) {
        if (!cyc.is_array() || cyc.empty())
          fail(path, "each cycle must be a non-empty array of letter labels");
        CyclicWord w;
        for (const json& letter : cyc) {
          if (!letter.is_string())
            fail(path, "cycle letters must be basis labels (strings)");
          try {
            w.letters.push_back(basis.index(letter.get<std::string>()));
          } catch (const std::exception&) {
            fail(path, "unknown basis label \"" +
                           letter.get<std::string>() + "\" in a cycle");
          }
        }
        words.push_back(std::move(w));
      }
      CouplingSeries coeff;
      try {
        coeff = parse_coupling_monomial(string_field(path, mono, "coeff"));
      } catch (const ProblemError& e) {
        fail(path, std::string("bad coefficient: ") + e.what());
      }
      e.add_cycles(words, coeff, basis);
    }
    auto [it, inserted] = s.components.emplace(key, std::move(e));
    if (!inserted)
      fail(path, "duplicate action key (" + std::to_string(key.g) + "," +
                     std::to_string(key.i) + "," + std::to_string(key.n) + ")");
  }
  try {
    s.validate(basis);
  } catch (const std::exception& e) {
    fail(path, std::string("invalid action: ") + e.what());
  }
  return s;
}

ModelBlock parse_model(const std::string& path, const json& j) {
  ModelBlock block;
  const std::string kind = string_field(path, j, "kind");
  if (kind == "gl")
    block.kind = ModelKind::GeneralLinear;
  else if (kind == "q")
    block.kind = ModelKind::Queer;
  else
    fail(path, "model.kind must be \"gl\" or \"q\", got \"" + kind + "\"");
  block.size = int_field(path, j, "size");
  if (block.size < 1) fail(path, "model.size must be positive");
  const json& lambda = field(path, j, "lambda");
  if (lambda.is_string()) {
    if (lambda.get<std::string>() != "symbolic")
      fail(path, "model.lambda must be \"symbolic\" or an array of scalars");
  } else if (lambda.is_array()) {
    for (const json& v : lambda)
      block.lambda.emplace_back(rational_entry(path, v, "model.lambda entry"));
    if (static_cast<int>(block.lambda.size()) != block.size)
      fail(path, "model.lambda must list exactly model.size values");
  } else {
    fail(path, "model.lambda must be \"symbolic\" or an array of scalars");
  }
  return block;
}

RunBlock parse_run(const std::string& path, const json& j) {
  RunBlock run;
  if (j.contains("order")) run.order = int_field(path, j, "order");
  if (j.contains("degree")) run.degree = int_field(path, j, "degree");
  if (j.contains("max_excess"))
    run.max_excess = int_field(path, j, "max_excess");
  if (j.contains("theorem")) {
    run.theorem = int_field(path, j, "theorem");
    if (run.theorem < 1 || run.theorem > 3)
      fail(path, "run.theorem must be 1, 2, or 3");
  }
  if (run.order < 0) fail(path, "run.order must be nonnegative");
  if (run.max_excess < 0) fail(path, "run.max_excess must be nonnegative");
  return run;
}

}  // namespace

CouplingSeries parse_coupling_monomial(const std::string& text) {
  Rational scalar(1);
  std::map<std::string, int> couplings;
  std::string token;
  std::istringstream in(text);
  bool any = false;
  while (std::getline(in, token, '*')) {
    // Trim surrounding spaces.
    std::size_t b = token.find_first_not_of(" \t");
    std::size_t e = token.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw ProblemError("empty factor in \"" + text + "\"");
    token = token.substr(b, e - b + 1);
    any = true;
    if (std::isalpha(static_cast<unsigned char>(token[0]))) {
      std::string sym = token;
      int exp = 1;
      if (std::size_t caret = token.find('^'); caret != std::string::npos) {
        sym = token.substr(0, caret);
        try {
          exp = std::stoi(token.substr(caret + 1));
        } catch (const std::exception&) {
          throw ProblemError("bad exponent in \"" + token + "\"");
        }
        if (exp < 1) throw ProblemError("exponents must be positive");
      }
      for (char c : sym)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
          throw ProblemError("bad symbol name \"" + sym + "\"");
      couplings[sym] += exp;
    } else {
      try {
        scalar *= rational_from_string(token);
      } catch (const std::exception& e) {
        throw ProblemError("bad rational \"" + token + "\": " + e.what());
      }
    }
  }
  if (!any) throw ProblemError("empty coefficient");
  return CouplingSeries::monomial(RatFunc(scalar), 0, couplings);
}

MatrixAlgebraModel build_block_model(const ModelBlock& block) {
  return build_model(block.kind, block.size, block.lambda);
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemError(path + ": cannot open file");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte ? e.byte - 1 : 0);
    throw ProblemError(path + ":" + std::to_string(line) + ":" +
                       std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) fail(path, "top level must be a JSON object");

  ProblemFile p;
  p.path = path;
  p.schema = string_field(path, doc, "schema");
  if (p.schema != "cyclebv-problem/1")
    fail(path, "unsupported schema \"" + p.schema +
                   "\" (expected \"cyclebv-problem/1\")");

  const json& super = field(path, doc, "superspace");
  p.basis = parse_basis(path, field(path, super, "basis"));
  p.form = parse_form(path, field(path, super, "form"));

  if (doc.contains("action"))
    p.action = parse_action(path, doc["action"], p.basis, p.form.parity);
  if (doc.contains("model")) p.model = parse_model(path, doc["model"]);
  if (doc.contains("run")) p.run = parse_run(path, doc["run"]);
  return p;
}

}  // namespace cyclebv::cli
