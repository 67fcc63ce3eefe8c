#include "ruled4/surface_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ruled4 {

namespace {

class Cursor {
 public:
  Cursor(const std::string& text) : s_(text) {}

  bool done() const { return i_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[i_]; }
  char get() {
    const char c = s_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  /// Skips blanks, and newlines and comments when `lines` is set.
  void skip(bool lines) {
    while (!done()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || (lines && c == '\n')) {
        get();
      } else if (c == '#') {
        while (!done() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  std::string key() {
    std::string k;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) k += get();
    if (k.empty()) fail("expected a key");
    return k;
  }

  std::string quoted() {
    expect('"');
    std::string v;
    while (peek() != '"') {
      if (done() || peek() == '\n') fail("unterminated string");
      v += get();
    }
    get();
    return v;
  }

  Rational number() {
    const int line = line_, col = col_;
    std::string tok;
    if (peek() == '"') {
      tok = quoted();
    } else {
      while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || std::string("+-./_").find(peek()) != std::string::npos))
        tok += get();
    }
    try {
      return parse_rational(tok);
    } catch (const Error&) {
      throw Error(ErrorKind::Parse, std::to_string(line) + ":" + std::to_string(col) + ": invalid number '" + tok + "'");
    }
  }

  std::vector<Rational> array() {
    expect('[');
    std::vector<Rational> out;
    skip(true);
    while (peek() != ']') {
      out.push_back(number());
      skip(true);
      if (peek() == ',') {
        get();
        skip(true);
      } else if (peek() != ']') {
        fail("expected ',' or ']'");
      }
    }
    get();
    return out;
  }

  void end_of_line() {
    skip(false);
    if (!done() && peek() != '\n') fail("unexpected trailing characters");
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

}  // namespace

SurfaceFile parse_surface_toml(const std::string& text) {
  SurfaceFile out;
  Cursor c(text);
  std::string table;
  std::array<bool, 4> seen_x{}, seen_e{};
  for (;;) {
    c.skip(true);
    if (c.done()) break;
    if (c.peek() == '[') {
      c.get();
      table = c.key();
      if (table != "base" && table != "director") c.fail("unknown table '" + table + "'");
      c.expect(']');
      c.end_of_line();
      continue;
    }
    const std::string k = c.key();
    c.skip(false);
    c.expect('=');
    c.skip(false);
    if (table.empty()) {
      if (k != "scalar" && k != "id") c.fail("unknown key '" + k + "'");
      const std::string v = c.quoted();
      if (k == "scalar") {
        if (v != "rational" && v != "f64") c.fail("scalar must be \"rational\" or \"f64\"");
        out.scalar = v;
      } else {
        out.id = v;
      }
    } else {
      const char prefix = table == "base" ? 'x' : 'e';
      if (k.size() != 2 || k[0] != prefix || k[1] < '1' || k[1] > '4')
        c.fail("expected " + std::string(1, prefix) + "1.." + std::string(1, prefix) + "4 in [" + table + "]");
      const int idx = k[1] - '1';
      auto& seen = table == "base" ? seen_x : seen_e;
      if (seen[idx]) c.fail("duplicate key '" + k + "'");
      seen[idx] = true;
      (table == "base" ? out.base : out.director)[idx] = c.array();
    }
    c.end_of_line();
  }
  for (int i = 0; i < 4; ++i) {
    if (!seen_x[i]) throw Error(ErrorKind::Parse, "missing key x" + std::to_string(i + 1) + " in [base]");
    if (!seen_e[i]) throw Error(ErrorKind::Parse, "missing key e" + std::to_string(i + 1) + " in [director]");
  }
  return out;
}

SurfaceFile load_surface_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  SurfaceFile f = parse_surface_toml(ss.str());
  if (f.id.empty()) f.id = path;
  return f;
}

}  // namespace ruled4
