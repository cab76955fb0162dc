#pragma once

#include "arith/modular.hpp"
#include "arith/fields.hpp"
#include "arith/poly.hpp"
#include "arith/ext_field.hpp"

namespace ssendo {

using arith::i64;
using arith::u64;

using arith::Fp2Elem;
using arith::Fp2Field;
using arith::PrimeField;
using arith::Poly;
using arith::PolyRing;
using arith::ExtField;
using arith::RootMult;

using arith::is_prime;
using arith::legendre;
using arith::sqrt_mod_prime;

template <class F>
std::vector<RootMult<F>> poly_roots(const PolyRing<F>& ring, const Poly<F>& f)
{
    return ring.roots(f);
}

template <class F>
bool poly_splits_linear(const PolyRing<F>& ring, const Poly<F>& f)
{
    return ring.splits_linear(f);
}

} // namespace ssendo
