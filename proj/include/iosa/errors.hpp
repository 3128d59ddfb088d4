#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace iosa {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class PosetLawViolation : public Error {
 public:
  PosetLawViolation(std::string law, std::vector<std::size_t> tuple)
      : Error(describe(law, tuple)), law(std::move(law)), tuple(std::move(tuple)) {}
  std::string law;
  std::vector<std::size_t> tuple;

 private:
  static std::string describe(const std::string& law, const std::vector<std::size_t>& t) {
    std::ostringstream os;
    os << "poset law violated: " << law << " at (";
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
    os << ")";
    return os.str();
  }
};

class NotALattice : public Error {
 public:
  NotALattice(std::size_t a, std::size_t b, const char* missing)
      : Error("no " + std::string(missing) + " for (" + std::to_string(a) + "," + std::to_string(b) + ")"),
        a(a), b(b) {}
  std::size_t a, b;
};

class NotDistributive : public Error {
 public:
  NotDistributive() : Error("lattice is not distributive") {}
};

class TooManyVariables : public Error {
 public:
  explicit TooManyVariables(std::size_t k)
      : Error("too many propositional variables: " + std::to_string(k) + " (limit 3)"), k(k) {}
  std::size_t k;
};

class MissingStructure : public Error {
 public:
  MissingStructure(std::string what, std::string need)
      : Error(what + " needs " + need), what(std::move(what)), need(std::move(need)) {}
  std::string what, need;
};

class NegationLawsFail : public Error {
 public:
  explicit NegationLawsFail(std::string law) : Error("negation law fails: " + law), law(std::move(law)) {}
  std::string law;
};

class NotMonotone : public Error {
 public:
  explicit NotMonotone(std::string which) : Error(which + " is not monotone"), which(std::move(which)) {}
  std::string which;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(std::string name) : Error("unbound variable: " + name), name(std::move(name)) {}
  std::string name;
};

class UnboundAtom : public Error {
 public:
  explicit UnboundAtom(std::string name) : Error("unbound atom: " + name), name(std::move(name)) {}
  std::string name;
};

class MissingNegation : public Error {
 public:
  MissingNegation() : Error("term uses negation but the algebra has none") {}
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::string msg, std::size_t position)
      : Error("syntax error at " + std::to_string(position) + ": " + msg), position(position) {}
  std::size_t position;
};

class NotSubordinationLattice : public Error {
 public:
  explicit NotSubordinationLattice(const std::string& why) : Error("not a subordination lattice: " + why) {}
};

class TooLarge : public Error {
 public:
  explicit TooLarge(const std::string& what) : Error("too large: " + what) {}
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

}  // namespace iosa
