#include "frobtest/parse.hpp"

#include <cctype>

#include "frobtest/error.hpp"

namespace frobtest {

namespace {

class Parser {
 public:
  Parser(std::string_view src, const RingPtr& ring) : src_(src), ring_(ring) {}

  Polynomial parse() {
    auto f = expr();
    skip();
    if (pos_ != src_.size()) throw ParseError("unexpected '" + std::string(1, src_[pos_]) + "'", pos_);
    return f;
  }

 private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::uint64_t integer() {
    skip();
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      if (v > (UINT64_MAX - 9) / 10) throw ParseError("integer literal too large", start);
      v = v * 10 + static_cast<unsigned>(src_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected integer", start);
    return v;
  }

  Polynomial expr() {
    Polynomial acc(ring_);
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    auto t = term();
    acc = negate ? -t : t;
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  Polynomial term() {
    auto f = factor();
    while (accept('*')) f = f * factor();
    return f;
  }

  Polynomial maybe_power(Polynomial base) {
    if (accept('^')) {
      auto k = integer();
      return base.pow(k);
    }
    return base;
  }

  Polynomial factor() {
    skip();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return maybe_power(inner);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto v = integer();
      return Polynomial::constant(ring_, static_cast<std::int64_t>(v % ring_->characteristic()));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      std::string name(src_.substr(start, pos_ - start));
      int idx = ring_->index_of(name);
      if (idx < 0)
        throw Error(ErrorCode::UnknownVariable,
                    "'" + name + "' at position " + std::to_string(start));
      Polynomial v = Polynomial::variable(ring_, static_cast<std::size_t>(idx));
      if (accept('^')) {
        auto k = integer();
        if (k > UINT32_MAX) throw Error(ErrorCode::Overflow, "exponent exceeds 32 bits");
        return Polynomial::variable(ring_, static_cast<std::size_t>(idx),
                                    static_cast<std::uint32_t>(k));
      }
      return v;
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  std::string_view src_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view source, const RingPtr& ring) {
  return Parser(source, ring).parse();
}

std::vector<Polynomial> parse_polynomial_list(std::string_view source, const RingPtr& ring) {
  std::vector<Polynomial> out;
  int depth = 0;
  std::size_t start = 0;
  bool any = false;
  for (std::size_t i = 0; i <= source.size(); ++i) {
    char c = i < source.size() ? source[i] : ',';
    if (c == '(') ++depth;
    if (c == ')' && --depth < 0) throw ParseError("unexpected ')'", i);
    if (i == source.size() && depth > 0) throw ParseError("unclosed '('", i);
    if (c == ',' && depth == 0) {
      auto piece = source.substr(start, i - start);
      bool blank = true;
      for (char ch : piece)
        if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
      if (blank) {
        if (i < source.size() || any) throw ParseError("empty generator", start);
      } else {
        out.push_back(parse_polynomial(piece, ring));
      }
      any = true;
      start = i + 1;
    }
  }
  return out;
}

}  // namespace frobtest
