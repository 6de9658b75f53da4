#include "augpulse/circuit/assembly.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

#include "augpulse/errors.hpp"

namespace augpulse {

namespace {

class LineScanner {
 public:
  LineScanner(std::string_view s, int line) : s_(s), line_(line) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(s_.substr(start, pos_ - start));
  }
  double number() {
    skip_ws();
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    if (first != last && *first == '+') ++first;
    double v = 0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc()) fail("expected number");
    pos_ = static_cast<size_t>(ptr - s_.data());
    return v;
  }
  int integer() {
    skip_ws();
    int v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("expected integer");
    pos_ = static_cast<size_t>(ptr - s_.data());
    return v;
  }
  int qref() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != 'q') fail("expected qubit reference q[i]");
    ++pos_;
    expect('[');
    int q = integer();
    expect(']');
    return q;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(line_, msg); }

 private:
  std::string_view s_;
  size_t pos_ = 0;
  int line_;
};

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

}  // namespace

Circuit parse_assembly(std::string_view text) {
  std::optional<Circuit> circ;
  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = strip_comment(text.substr(start, end - start));
    ++line_no;
    start = end + 1;

    LineScanner sc(line, line_no);
    if (sc.done()) continue;
    std::string name = sc.ident();
    if (!circ) {
      if (name != "qubits") sc.fail("program must start with 'qubits N'");
      int n = sc.integer();
      if (n < 0) sc.fail("negative qubit count");
      if (!sc.done()) sc.fail("trailing characters after header");
      circ.emplace(n);
      continue;
    }
    GateKind kind;
    if (!kind_from_name(name, kind)) throw UnknownGate(line_no, name);

    std::vector<double> params;
    if (sc.accept('(')) {
      if (!sc.accept(')')) {
        do params.push_back(sc.number());
        while (sc.accept(','));
        sc.expect(')');
      }
    }
    std::vector<int> qubits;
    do {
      int q = sc.qref();
      if (q < 0 || q >= circ->num_qubits)
        throw ParseError(line_no, "qubit index " + std::to_string(q) + " out of range (" +
                                      std::to_string(circ->num_qubits) + " declared)");
      qubits.push_back(q);
    } while (sc.accept(','));
    sc.accept(';');
    if (!sc.done()) sc.fail("trailing characters");
    try {
      circ->add(Gate::make(kind, std::move(qubits), std::move(params)));
    } catch (const InvalidGate& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!circ) throw ParseError(line_no, "missing 'qubits N' header");
  return *circ;
}

std::string format_angle(double deg) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, deg);
  (void)ec;
  return std::string(buf, ptr);
}

std::string to_assembly(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.num_qubits << "\n";
  for (const auto& g : c.gates) {
    os << (g.kind == GateKind::Custom ? g.name : std::string(kind_name(g.kind)));
    if (!g.params.empty()) {
      os << "(";
      for (size_t i = 0; i < g.params.size(); ++i)
        os << (i ? ", " : "") << format_angle(g.params[i]);
      os << ")";
    }
    for (size_t i = 0; i < g.qubits.size(); ++i)
      os << (i ? ", " : " ") << "q[" << g.qubits[i] << "]";
    os << "\n";
  }
  return os.str();
}

}  // namespace augpulse
