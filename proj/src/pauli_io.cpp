#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "floq/pauli.hpp"

namespace floq {
namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

void write_pauli_text(std::ostream& os, const PauliSum& a) {
  for (const auto& [s, c] : a.terms()) {
    os << format_double(c.real()) << ' ' << format_double(c.imag()) << ' ' << s.letters() << '\n';
  }
}

PauliSum read_pauli_text(std::istream& is) {
  PauliSum out;
  bool have_width = false;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    std::string letters, extra;
    if (!(ls >> re >> im >> letters) || (ls >> extra)) {
      throw std::invalid_argument("Pauli text line " + std::to_string(line_no) +
                                  ": expected 'coeff_re coeff_im letters'");
    }
    const auto s = PauliString::from_letters(letters);
    if (!have_width) {
      out = PauliSum(s.width());
      have_width = true;
    }
    out.add(s, Complex(re, im));
  }
  return out;
}

std::string to_pauli_text(const PauliSum& a) {
  std::ostringstream os;
  write_pauli_text(os, a);
  return os.str();
}

PauliSum parse_pauli_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_pauli_text(is);
}

}  // namespace floq
