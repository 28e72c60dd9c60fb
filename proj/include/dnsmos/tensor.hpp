#pragma once

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <vector>

namespace dnsmos {

// Dense row-major tensor. The network runs in float for speed; the gradient
// oracles instantiate the same code in double.
template <typename Real>
struct TensorT {
  std::vector<int> dims;
  std::vector<Real> data;

  TensorT() = default;
  explicit TensorT(std::vector<int> d) : dims(std::move(d)), data(count(dims), Real(0)) {}
  TensorT(std::initializer_list<int> d) : TensorT(std::vector<int>(d)) {}

  static int64_t count(const std::vector<int>& d) {
    int64_t n = 1;
    for (int e : d) n *= e;
    return n;
  }

  int64_t size() const { return static_cast<int64_t>(data.size()); }
  bool same_shape(const TensorT& other) const { return dims == other.dims; }

  Real* ptr() { return data.data(); }
  const Real* ptr() const { return data.data(); }
};

using Tensor = TensorT<float>;

template <typename To, typename From>
TensorT<To> tensor_cast(const TensorT<From>& src) {
  TensorT<To> out;
  out.dims = src.dims;
  out.data.reserve(src.data.size());
  for (From v : src.data) out.data.push_back(static_cast<To>(v));
  return out;
}

}  // namespace dnsmos
