#include "ainf/tensor.hpp"

#include "ainf/error.hpp"

namespace ainf {

void add_scaled(SparseVec& into, const SparseVec& v, const Scalar& c) {
  if (is_zero(c)) return;
  for (const auto& [i, x] : v) {
    Scalar& slot = into[i];
    slot += c * x;
    if (slot.is_zero()) into.erase(i);
  }
}

bool is_zero(const SparseVec& v) { return v.empty(); }

std::string render(const SparseVec& v, const std::vector<std::string>& names) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [i, c] : v) {
    if (!out.empty()) out += " + ";
    out += format_scalar(c) + "*" + names[i];
  }
  return out;
}

void SparseTensor::add(const std::vector<int>& in, int out, const Scalar& c) {
  if (static_cast<int>(in.size()) != arity_)
    fail(ErrorKind::Precondition, "tensor entry arity mismatch");
  if (c.is_zero()) return;
  SparseVec& row = rows_[in];
  Scalar& slot = row[out];
  slot += c;
  if (slot.is_zero()) {
    row.erase(out);
    if (row.empty()) rows_.erase(in);
  }
}

void SparseTensor::set(const std::vector<int>& in, int out, const Scalar& c) {
  if (static_cast<int>(in.size()) != arity_)
    fail(ErrorKind::Precondition, "tensor entry arity mismatch");
  auto it = rows_.find(in);
  if (c.is_zero()) {
    if (it != rows_.end()) {
      it->second.erase(out);
      if (it->second.empty()) rows_.erase(it);
    }
    return;
  }
  rows_[in][out] = c;
}

Scalar SparseTensor::coeff(const std::vector<int>& in, int out) const {
  auto it = rows_.find(in);
  if (it == rows_.end()) return Scalar(0);
  auto jt = it->second.find(out);
  return jt == it->second.end() ? Scalar(0) : jt->second;
}

const SparseVec& SparseTensor::apply(std::span<const int> in) const {
  static const SparseVec kEmpty;
  // std::map supports heterogeneous lookup only with a transparent comparator;
  // materialize the key (words are short).
  std::vector<int> key(in.begin(), in.end());
  auto it = rows_.find(key);
  return it == rows_.end() ? kEmpty : it->second;
}

} // namespace ainf
