#include "tgs/format.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace tgs {

namespace detail {

TokenStream::TokenStream(std::string_view text) {
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else {
      std::size_t start = i;
      while (i < text.size() && text[i] != ' ' && text[i] != '\t' &&
             text[i] != '\r' && text[i] != '\n' && text[i] != '#')
        ++i;
      tokens_.push_back({std::string(text.substr(start, i - start)), line});
    }
  }
}

const std::string& TokenStream::peek() const {
  if (at_end()) fail("unexpected end of file");
  return tokens_[pos_].text;
}

std::size_t TokenStream::line() const {
  if (tokens_.empty()) return 1;
  return pos_ < tokens_.size() ? tokens_[pos_].line : tokens_.back().line;
}

std::string TokenStream::next(std::string_view what) {
  if (at_end()) fail("unexpected end of file, expected " + std::string(what));
  return tokens_[pos_++].text;
}

std::uint64_t TokenStream::next_uint(std::string_view what) {
  std::size_t at = line();
  std::string tok = next(what);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw Error(ErrorKind::MalformedFile,
                "line " + std::to_string(at) + ": expected " +
                    std::string(what) + ", found '" + tok + "'");
  return value;
}

std::vector<std::string> TokenStream::rest_of_line() {
  std::vector<std::string> out;
  if (at_end()) return out;
  std::size_t current = tokens_[pos_ == 0 ? 0 : pos_ - 1].line;
  while (!at_end() && tokens_[pos_].line == current)
    out.push_back(tokens_[pos_++].text);
  return out;
}

void TokenStream::fail(const std::string& message) const {
  throw Error(ErrorKind::MalformedFile,
              "line " + std::to_string(line()) + ": " + message);
}

}  // namespace detail

namespace {

std::vector<Elem> read_table(detail::TokenStream& ts, std::size_t count,
                             std::size_t order, const char* name) {
  std::vector<Elem> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t line = ts.line();
    std::uint64_t v = ts.next_uint(std::string(name) + " entry");
    if (v >= order)
      throw Error(ErrorKind::IndexOutOfRange,
                  "line " + std::to_string(line) + ": " + name + " entry " +
                      std::to_string(i) + " = " + std::to_string(v) +
                      " >= order " + std::to_string(order));
    out.push_back(static_cast<Elem>(v));
  }
  return out;
}

}  // namespace

GammaSemiring parse_structure(std::string_view text) {
  detail::TokenStream ts(text);
  std::optional<std::size_t> order, gamma;
  AxiomConfig config;
  std::optional<std::vector<Elem>> add, ternary;

  while (!ts.at_end()) {
    std::size_t line = ts.line();
    std::string key = ts.next("key");
    auto need_dims = [&] {
      if (!order || !gamma)
        throw Error(ErrorKind::MalformedFile,
                    "line " + std::to_string(line) + ": '" + key +
                        "' before order and gamma");
    };
    if (key == "order" || key == "gamma") {
      std::uint64_t v = ts.next_uint(key);
      if (v == 0 || v > 4096)
        throw Error(ErrorKind::MalformedFile,
                    "line " + std::to_string(line) + ": " + key +
                        " out of supported range");
      (key == "order" ? order : gamma) = static_cast<std::size_t>(v);
    } else if (key == "axioms") {
      for (const auto& tok : ts.rest_of_line())
        if (!apply_axiom_token(config, tok))
          throw Error(ErrorKind::MalformedFile,
                      "line " + std::to_string(line) + ": bad axiom token '" +
                          tok + "'");
    } else if (key == "add") {
      need_dims();
      add = read_table(ts, *order * *order, *order, "add");
    } else if (key == "ternary") {
      need_dims();
      std::size_t n = *order, g = *gamma;
      enforce_guard(n * g * n * g * n, std::size_t{1} << 24, "ternary table");
      ternary = read_table(ts, n * g * n * g * n, n, "ternary");
    } else if (key == "ternary1") {
      need_dims();
      std::size_t n = *order, g = *gamma;
      auto one = read_table(ts, n * g * n * n, n, "ternary1");
      std::vector<Elem> full(n * g * n * g * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t al = 0; al < g; ++al)
          for (std::size_t b = 0; b < n; ++b)
            for (std::size_t be = 0; be < g; ++be)
              for (std::size_t c = 0; c < n; ++c)
                full[(((a * g + al) * n + b) * g + be) * n + c] =
                    one[((a * g + al) * n + b) * n + c];
      ternary = std::move(full);
    } else {
      throw Error(ErrorKind::MalformedFile,
                  "line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  if (!order) throw Error(ErrorKind::MalformedFile, "missing 'order'");
  if (!gamma) throw Error(ErrorKind::MalformedFile, "missing 'gamma'");
  if (!add) throw Error(ErrorKind::MalformedFile, "missing 'add'");
  if (!ternary) throw Error(ErrorKind::MalformedFile, "missing 'ternary'");
  return GammaSemiring(*order, *gamma, std::move(*add), std::move(*ternary),
                       config);
}

std::string serialize_structure(const GammaSemiring& s) {
  std::ostringstream out;
  const std::size_t n = s.order();
  out << "order " << n << "\n";
  out << "gamma " << s.gamma() << "\n";
  out << "axioms " << to_string(s.axioms()) << "\n";
  out << "add\n";
  auto add = s.add_table();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) out << (b ? " " : "") << add[a * n + b];
    out << "\n";
  }
  out << "ternary\n";
  auto t = s.ternary_table();
  for (std::size_t row = 0; row * n < t.size(); ++row) {
    for (std::size_t c = 0; c < n; ++c) out << (c ? " " : "") << t[row * n + c];
    out << "\n";
  }
  return out.str();
}

std::string structure_hash(const GammaSemiring& s) {
  std::uint64_t h = 1469598103934665603ull;
  auto feed_word = [&](std::uint32_t w) {
    for (int i = 0; i < 4; ++i) {
      h ^= (w >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  feed_word(static_cast<std::uint32_t>(s.order()));
  feed_word(static_cast<std::uint32_t>(s.gamma()));
  for (char c : to_string(s.axioms())) feed_word(static_cast<unsigned char>(c));
  for (Elem e : s.add_table()) feed_word(e);
  for (Elem e : s.ternary_table()) feed_word(e);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Usage, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Usage, "cannot write '" + path + "'");
  out << contents;
}

}  // namespace tgs
