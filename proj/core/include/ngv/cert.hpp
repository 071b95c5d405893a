#pragma once

#include <vector>

namespace ngv {

/// Witness that `claimed` equals an ordered product of conjugates of
/// base^{+-1}. Factor i contributes conjugator^{-1} * base^{sign} * conjugator.
/// Certificates re-verify by exact re-multiplication (see replay_conj_product).
template <class T>
struct ConjProduct {
  struct Factor {
    int sign;  // +1 or -1
    T conjugator;
  };
  T base;
  std::vector<Factor> factors;
  T claimed;
};

template <class T, class Mul, class Inv>
T replay_conj_product(const ConjProduct<T>& cert, Mul mul, Inv inv) {
  T acc = mul(inv(cert.base), cert.base);  // identity of the right degree
  for (const auto& f : cert.factors) {
    T body = f.sign >= 0 ? cert.base : inv(cert.base);
    T term = mul(mul(inv(f.conjugator), body), f.conjugator);
    acc = mul(acc, term);
  }
  return acc;
}

}  // namespace ngv
