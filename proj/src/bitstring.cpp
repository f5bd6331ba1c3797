#include "stoptime/bitstring.hpp"

#include <algorithm>
#include <ostream>

#include "stoptime/errors.hpp"

namespace stoptime {

BitString BitString::parse(std::string_view text) {
  BitString out;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw ConfigError("not a bit string: \"" + std::string(text) + "\"");
    }
  }
  out.bits_.assign(text);
  return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  BitString out;
  out.bits_.resize(width, '0');
  for (std::size_t i = 0; i < width && i < 64; ++i) {
    if ((value >> i) & 1U) out.bits_[width - 1 - i] = '1';
  }
  return out;
}

BitString BitString::binary(std::uint64_t value) {
  std::size_t width = 1;
  while (width < 64 && (value >> width) != 0) ++width;
  return from_uint(value, width);
}

BitString BitString::repeat(bool bit, std::size_t count) {
  BitString out;
  out.bits_.assign(count, bit ? '1' : '0');
  return out;
}

BitString BitString::child(bool bit) const {
  BitString out = *this;
  out.bits_.push_back(bit ? '1' : '0');
  return out;
}

BitString BitString::parent() const {
  BitString out = *this;
  out.bits_.pop_back();
  return out;
}

BitString BitString::sibling() const {
  BitString out = *this;
  out.bits_.back() = out.bits_.back() == '0' ? '1' : '0';
  return out;
}

BitString BitString::prefix(std::size_t length) const {
  BitString out;
  out.bits_ = bits_.substr(0, std::min(length, bits_.size()));
  return out;
}

std::uint64_t BitString::to_uint() const {
  std::uint64_t v = 0;
  for (char c : bits_) v = (v << 1) | (c == '1' ? 1U : 0U);
  return v;
}

BitString& BitString::operator+=(const BitString& other) {
  bits_ += other.bits_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const BitString& s) {
  return os << '"' << s.str() << '"';
}

bool is_prefix(const BitString& a, const BitString& b) {
  return a.size() <= b.size() &&
         std::equal(a.str().begin(), a.str().end(), b.str().begin());
}

bool is_proper_prefix(const BitString& a, const BitString& b) {
  return a.size() < b.size() && is_prefix(a, b);
}

bool are_compatible(const BitString& a, const BitString& b) {
  return a.size() <= b.size() ? is_prefix(a, b) : is_prefix(b, a);
}

bool check_prefix_free(const StringSet& members) {
  const BitString* prev = nullptr;
  for (const auto& s : members) {
    if (prev != nullptr && is_prefix(*prev, s)) return false;
    prev = &s;
  }
  return true;
}

bool check_prefix_free(std::vector<BitString> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (is_prefix(members[i - 1], members[i])) return false;
  }
  return true;
}

std::vector<BitString> path_to_root(const BitString& v) {
  std::vector<BitString> out;
  out.reserve(v.size() + 1);
  for (std::size_t len = v.size() + 1; len-- > 0;) out.push_back(v.prefix(len));
  return out;
}

std::vector<BitString> strings_of_length(std::size_t length) {
  return extensions_of_length(BitString{}, length);
}

std::vector<BitString> strings_up_to(std::size_t depth) {
  std::vector<BitString> out{BitString{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() < depth) {
      out.push_back(out[i].child(false));
      out.push_back(out[i].child(true));
    }
  }
  return out;
}

std::vector<BitString> extensions_of_length(const BitString& v, std::size_t length) {
  if (length < v.size()) return {};
  const std::size_t extra = length - v.size();
  if (extra >= 63) throw ConfigError("extension level too deep to enumerate");
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << extra);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << extra); ++i) {
    out.push_back(v + BitString::from_uint(i, extra));
  }
  return out;
}

PrefixFreeSet::PrefixFreeSet(StringSet members) : members_(std::move(members)) {
  if (!check_prefix_free(members_)) throw ConfigError("set is not prefix-free");
}

const BitString* PrefixFreeSet::member_prefixing(const BitString& s) const {
  for (const auto& p : path_to_root(s)) {
    auto it = members_.find(p);
    if (it != members_.end()) return &*it;
  }
  return nullptr;
}

bool PrefixFreeSet::try_insert(const BitString& s) {
  if (member_prefixing(s) != nullptr) return false;
  auto it = members_.lower_bound(s);
  if (it != members_.end() && is_prefix(s, *it)) return false;
  members_.insert(s);
  return true;
}

}  // namespace stoptime
