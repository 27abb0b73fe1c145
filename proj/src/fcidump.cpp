// Copyright 2026 The QIDA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qida/fcidump.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string_view>

#include "qida/error.hpp"

namespace qida {

namespace {

std::size_t pair_index(int p, int q) {
  if (p < q) std::swap(p, q);
  return static_cast<std::size_t>(p) * (p + 1) / 2 + q;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::optional<double> to_double(std::string_view tok) {
  // Fortran emitters may write 1.0D-03.
  std::string buf(tok);
  std::replace_if(
      buf.begin(), buf.end(), [](char c) { return c == 'D' || c == 'd'; },
      'E');
  if (!buf.empty() && buf.front() == '+') buf.erase(0, 1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc() || ptr != buf.data() + buf.size()) return std::nullopt;
  return v;
}

std::optional<long> to_long(std::string_view tok) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

// Splits the namelist body into KEY -> raw value text.
std::map<std::string, std::string> split_namelist(const std::string& text) {
  std::map<std::string, std::string> out;
  std::vector<std::pair<std::string, std::size_t>> keys;  // key, value start
  std::vector<std::size_t> key_starts;
  bool in_quote = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\'' || c == '"') in_quote = !in_quote;
    if (in_quote || c != '=') continue;
    std::size_t end = i;
    while (end > 0 && std::isspace(static_cast<unsigned char>(text[end - 1])))
      --end;
    std::size_t begin = end;
    while (begin > 0 && (std::isalnum(static_cast<unsigned char>(text[begin - 1])) ||
                         text[begin - 1] == '_'))
      --begin;
    keys.emplace_back(upper(text.substr(begin, end - begin)), i + 1);
    key_starts.push_back(begin);
  }
  for (std::size_t k = 0; k < keys.size(); ++k) {
    std::size_t stop = k + 1 < keys.size() ? key_starts[k + 1] : text.size();
    out[keys[k].first] =
        text.substr(keys[k].second, stop - keys[k].second);
  }
  return out;
}

std::vector<std::string> list_tokens(const std::string& raw) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : raw) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) toks.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) toks.push_back(cur);
  return toks;
}

std::string format_value(double v) {
  if (v == 0.0) return "0.0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sanitize_label(const std::string& label) {
  std::string out;
  for (char c : label)
    if (c != '\'' && c != '"' && c != '/' && c != '&' && c != '\n') out += c;
  return out;
}

}  // namespace

IntegralSet::IntegralSet(int n_orb, int n_elec, int ms2)
    : n_orb_(n_orb), n_elec_(n_elec), ms2_(ms2) {
  if (n_orb < 0) throw InputError("NORB must be non-negative");
  if (n_elec < 0 || n_elec > 2 * n_orb)
    throw RangeError("NELEC=" + std::to_string(n_elec) + " outside [0, 2*NORB]");
  h_ = Eigen::MatrixXd::Zero(n_orb, n_orb);
  const std::size_t npair = static_cast<std::size_t>(n_orb) * (n_orb + 1) / 2;
  eri_.assign(npair * (npair + 1) / 2, 0.0);
  orbsym.assign(n_orb, 1);
}

void IntegralSet::check_index(int p) const {
  if (p < 0 || p >= n_orb_)
    throw RangeError("orbital index " + std::to_string(p) + " outside [0, " +
                     std::to_string(n_orb_) + ")");
}

std::size_t IntegralSet::eri_index(int p, int q, int r, int s) const {
  check_index(p);
  check_index(q);
  check_index(r);
  check_index(s);
  return pair_index(static_cast<int>(pair_index(p, q)),
                    static_cast<int>(pair_index(r, s)));
}

double IntegralSet::h(int p, int q) const {
  check_index(p);
  check_index(q);
  return h_(p, q);
}

void IntegralSet::set_h(int p, int q, double value) {
  check_index(p);
  check_index(q);
  h_(p, q) = value;
  h_(q, p) = value;
}

double IntegralSet::eri(int p, int q, int r, int s) const {
  return eri_[eri_index(p, q, r, s)];
}

void IntegralSet::set_eri(int p, int q, int r, int s, double value) {
  eri_[eri_index(p, q, r, s)] = value;
}

IntegralSet parse_fcidump(std::istream& in) {
  std::string line;
  int lineno = 0;
  int header_start = 0;

  // Header: from the &FCI line up to '/' or &END.
  std::string header;
  bool started = false;
  bool closed = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string up = upper(line);
    if (!started) {
      if (trim(up).empty()) continue;
      auto pos = up.find("&FCI");
      if (pos == std::string::npos)
        throw ParseError("expected '&FCI' namelist header", lineno);
      started = true;
      header_start = lineno;
      up = up.substr(pos + 4);
      line = line.substr(pos + 4);
    }
    auto end_pos = up.find("&END");
    bool in_quote = false;
    std::size_t slash = std::string::npos;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '\'' || line[i] == '"') in_quote = !in_quote;
      if (!in_quote && line[i] == '/') {
        slash = i;
        break;
      }
    }
    std::size_t stop = std::min(end_pos, slash);
    if (stop != std::string::npos) {
      header += line.substr(0, stop);
      closed = true;
      break;
    }
    header += line;
    header += '\n';
  }
  if (!started) throw ParseError("empty input: no '&FCI' header", lineno);
  if (!closed) throw ParseError("unterminated '&FCI' header", header_start);

  auto fields = split_namelist(header);
  auto get_int = [&](const char* key) -> std::optional<long> {
    auto it = fields.find(key);
    if (it == fields.end()) return std::nullopt;
    auto toks = list_tokens(it->second);
    if (toks.size() != 1)
      throw ParseError(std::string("malformed ") + key + " value", header_start);
    auto v = to_long(toks.front());
    if (!v) throw ParseError(std::string("non-integer ") + key, header_start);
    return v;
  };
  auto norb = get_int("NORB");
  auto nelec = get_int("NELEC");
  if (!norb) throw ParseError("header is missing NORB", header_start);
  if (!nelec) throw ParseError("header is missing NELEC", header_start);
  if (*norb < 0 || *norb > 64)
    throw RangeError("line " + std::to_string(header_start) +
                     ": NORB outside [0, 64]");
  auto ms2 = get_int("MS2");

  IntegralSet s(static_cast<int>(*norb), static_cast<int>(*nelec),
                static_cast<int>(ms2.value_or(0)));
  if (auto isym = get_int("ISYM")) s.isym = static_cast<int>(*isym);
  if (auto it = fields.find("ORBSYM"); it != fields.end()) {
    std::vector<int> sym;
    for (const auto& t : list_tokens(it->second)) {
      auto v = to_long(t);
      if (!v) throw ParseError("non-integer ORBSYM entry", header_start);
      sym.push_back(static_cast<int>(*v));
    }
    if (!sym.empty()) s.orbsym = std::move(sym);
  }
  if (auto it = fields.find("LABEL"); it != fields.end()) {
    std::string raw(trim(it->second));
    while (!raw.empty() && raw.back() == ',') raw.pop_back();
    raw = std::string(trim(raw));
    if (raw.size() >= 2 && (raw.front() == '\'' || raw.front() == '"'))
      raw = raw.substr(1, raw.size() - 2);
    s.source_label = raw;
  }

  const long M = *norb;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (toks.size() != 5)
      throw ParseError("expected 'value i j k l', got " +
                           std::to_string(toks.size()) + " tokens",
                       lineno);
    auto v = to_double(toks[0]);
    if (!v) throw ParseError("non-numeric value '" + toks[0] + "'", lineno);
    long idx[4];
    for (int k = 0; k < 4; ++k) {
      auto x = to_long(toks[k + 1]);
      if (!x) throw ParseError("non-integer index '" + toks[k + 1] + "'", lineno);
      if (*x < 0 || *x > M)
        throw RangeError("line " + std::to_string(lineno) + ": index " +
                         std::to_string(*x) + " outside [0, " +
                         std::to_string(M) + "]");
      idx[k] = *x;
    }
    const int i = static_cast<int>(idx[0]) - 1, j = static_cast<int>(idx[1]) - 1,
              k = static_cast<int>(idx[2]) - 1, l = static_cast<int>(idx[3]) - 1;
    if (idx[0] && idx[1] && idx[2] && idx[3]) {
      s.set_eri(i, j, k, l, *v);
    } else if (idx[0] && idx[1] && !idx[2] && !idx[3]) {
      s.set_h(i, j, *v);
    } else if (!idx[0] && !idx[1] && !idx[2] && !idx[3]) {
      s.set_core_energy(*v);
    } else if (idx[0] && !idx[1] && !idx[2] && !idx[3]) {
      // Orbital energy records carry no Hamiltonian information.
    } else {
      throw ParseError("unsupported index pattern", lineno);
    }
  }
  return s;
}

IntegralSet parse_fcidump(const std::string& text) {
  std::istringstream in(text);
  return parse_fcidump(in);
}

IntegralSet read_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open FCIDUMP file '" + path + "'");
  return parse_fcidump(in);
}

void write_fcidump(const IntegralSet& s, std::ostream& out) {
  const int M = s.n_orb();
  out << " &FCI NORB=" << M << ",NELEC=" << s.n_elec() << ",MS2=" << s.ms2()
      << ",\n  ORBSYM=";
  for (int p = 0; p < M; ++p)
    out << (p < static_cast<int>(s.orbsym.size()) ? s.orbsym[p] : 1) << ',';
  out << "\n  ISYM=" << s.isym << ",\n";
  if (!s.source_label.empty())
    out << "  LABEL='" << sanitize_label(s.source_label) << "',\n";
  out << " &END\n";
  for (int p = 0; p < M; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r)
        for (int t = 0; t <= r; ++t) {
          if (pair_index(p, q) < pair_index(r, t)) continue;
          double v = s.eri(p, q, r, t);
          if (v == 0.0) continue;
          out << format_value(v) << ' ' << p + 1 << ' ' << q + 1 << ' ' << r + 1
              << ' ' << t + 1 << '\n';
        }
  for (int p = 0; p < M; ++p)
    for (int q = 0; q <= p; ++q) {
      double v = s.h()(p, q);
      if (v == 0.0) continue;
      out << format_value(v) << ' ' << p + 1 << ' ' << q + 1 << " 0 0\n";
    }
  out << format_value(s.core_energy()) << " 0 0 0 0\n";
}

std::string write_fcidump(const IntegralSet& s) {
  std::ostringstream out;
  write_fcidump(s, out);
  return out.str();
}

void save_fcidump(const IntegralSet& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write FCIDUMP file '" + path + "'");
  write_fcidump(s, out);
}

}  // namespace qida
