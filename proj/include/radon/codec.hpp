#pragma once

// Systematic [n, k] Reed-Solomon code over GF(256). The generator matrix is
// a Vandermonde matrix normalized so its top k x k block is the identity;
// every k rows stay invertible, so any k distinct fragments decode. Fragment
// i (1-based) for i <= k is the i-th length-|v|/k slice of the value.

#include <algorithm>
#include <map>
#include <span>
#include <vector>

#include "core.hpp"
#include "gf256.hpp"

namespace radon {

struct CodecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotEnoughFragments : CodecError {
    using CodecError::CodecError;
};
struct MalformedFragments : CodecError {
    using CodecError::CodecError;
};

struct CodecParams {
    std::uint32_t n{1};
    std::uint32_t k{1};

    void validate() const {
        if (k < 1 || n < k) throw CodecError("codec: need 1 <= k <= n");
        if (n > 255) throw CodecError("codec: n must be at most 255");
    }
};

class MdsCodec {
  public:
    explicit MdsCodec(CodecParams p) : p_(p) {
        p_.validate();
        build_matrix();
    }

    const CodecParams& params() const { return p_; }

    // All n fragments of v. |v| must be divisible by k.
    std::vector<CodedElement> encode(const Value& v) const {
        const std::size_t slice = slice_len(v);
        std::vector<CodedElement> out(p_.n);
        for (std::uint32_t i = 0; i < p_.n; ++i) {
            out[i].index = i + 1;
            out[i].bytes = eval_row(i, v.bytes, slice);
        }
        return out;
    }

    // Fragment `index` alone, identical to encode(v)[index-1].
    CodedElement project(const Value& v, std::uint32_t index) const {
        if (index < 1 || index > p_.n) throw CodecError("codec: fragment index out of range");
        const std::size_t slice = slice_len(v);
        return CodedElement{index, eval_row(index - 1, v.bytes, slice)};
    }

    // Rebuilds the unique value consistent with any k distinct-index
    // fragments. Extra fragments beyond k are ignored (lowest indices win).
    Value decode(std::span<const CodedElement> fragments) const {
        std::map<std::uint32_t, const CodedElement*> picked;
        for (const auto& f : fragments) {
            if (f.index < 1 || f.index > p_.n) throw MalformedFragments("codec: fragment index out of range");
            picked.emplace(f.index, &f);
        }
        if (picked.size() < p_.k)
            throw NotEnoughFragments("codec: need " + std::to_string(p_.k) + " distinct fragments, got " +
                                     std::to_string(picked.size()));

        std::vector<const CodedElement*> use;
        for (const auto& [idx, f] : picked) {
            use.push_back(f);
            if (use.size() == p_.k) break;
        }
        const std::size_t slice = use.front()->bytes.size();
        for (const auto* f : use)
            if (f->bytes.size() != slice) throw MalformedFragments("codec: fragment lengths differ");

        // invert the k x k submatrix of generator rows for the picked indices
        std::vector<std::uint8_t> m(static_cast<std::size_t>(p_.k) * p_.k);
        for (std::uint32_t r = 0; r < p_.k; ++r)
            for (std::uint32_t c = 0; c < p_.k; ++c) m[r * p_.k + c] = gen_[(use[r]->index - 1) * p_.k + c];
        std::vector<std::uint8_t> minv = invert(m, p_.k);

        Value v;
        v.bytes.assign(static_cast<std::size_t>(p_.k) * slice, 0);
        for (std::uint32_t j = 0; j < p_.k; ++j)
            for (std::uint32_t r = 0; r < p_.k; ++r) {
                const std::uint8_t coef = minv[j * p_.k + r];
                if (coef == 0) continue;
                for (std::size_t b = 0; b < slice; ++b)
                    v.bytes[j * slice + b] ^= gf::mul(coef, use[r]->bytes[b]);
            }
        return v;
    }

    // decode-then-project: the fragment a repairing server needs.
    CodedElement re_encode(std::span<const CodedElement> fragments, std::uint32_t target) const {
        return project(decode(fragments), target);
    }

  private:
    std::size_t slice_len(const Value& v) const {
        if (v.size() % p_.k != 0) throw CodecError("codec: value length not divisible by k");
        return v.size() / p_.k;
    }

    std::vector<std::uint8_t> eval_row(std::uint32_t row, const std::vector<std::uint8_t>& data,
                                       std::size_t slice) const {
        std::vector<std::uint8_t> out(slice, 0);
        for (std::uint32_t c = 0; c < p_.k; ++c) {
            const std::uint8_t coef = gen_[row * p_.k + c];
            if (coef == 0) continue;
            const std::uint8_t* src = data.data() + static_cast<std::size_t>(c) * slice;
            for (std::size_t b = 0; b < slice; ++b) out[b] ^= gf::mul(coef, src[b]);
        }
        return out;
    }

    void build_matrix() {
        const std::uint32_t n = p_.n, k = p_.k;
        // Vandermonde rows over distinct evaluation points 0..n-1
        std::vector<std::uint8_t> vand(static_cast<std::size_t>(n) * k);
        for (std::uint32_t r = 0; r < n; ++r)
            for (std::uint32_t c = 0; c < k; ++c) vand[r * k + c] = gf::pow(static_cast<std::uint8_t>(r), c);
        // normalize: right-multiply by the inverse of the top block
        std::vector<std::uint8_t> top(vand.begin(), vand.begin() + static_cast<std::size_t>(k) * k);
        std::vector<std::uint8_t> topinv = invert(top, k);
        gen_.assign(static_cast<std::size_t>(n) * k, 0);
        for (std::uint32_t r = 0; r < n; ++r)
            for (std::uint32_t c = 0; c < k; ++c) {
                std::uint8_t acc = 0;
                for (std::uint32_t t = 0; t < k; ++t) acc ^= gf::mul(vand[r * k + t], topinv[t * k + c]);
                gen_[r * k + c] = acc;
            }
    }

    static std::vector<std::uint8_t> invert(std::vector<std::uint8_t> m, std::uint32_t k) {
        std::vector<std::uint8_t> inv(static_cast<std::size_t>(k) * k, 0);
        for (std::uint32_t i = 0; i < k; ++i) inv[i * k + i] = 1;
        for (std::uint32_t col = 0; col < k; ++col) {
            std::uint32_t pivot = col;
            while (pivot < k && m[pivot * k + col] == 0) ++pivot;
            if (pivot == k) throw MalformedFragments("codec: singular fragment matrix");
            if (pivot != col)
                for (std::uint32_t c = 0; c < k; ++c) {
                    std::swap(m[pivot * k + c], m[col * k + c]);
                    std::swap(inv[pivot * k + c], inv[col * k + c]);
                }
            const std::uint8_t scale = gf::inv(m[col * k + col]);
            for (std::uint32_t c = 0; c < k; ++c) {
                m[col * k + c] = gf::mul(m[col * k + c], scale);
                inv[col * k + c] = gf::mul(inv[col * k + c], scale);
            }
            for (std::uint32_t r = 0; r < k; ++r) {
                if (r == col || m[r * k + col] == 0) continue;
                const std::uint8_t f = m[r * k + col];
                for (std::uint32_t c = 0; c < k; ++c) {
                    m[r * k + c] ^= gf::mul(f, m[col * k + c]);
                    inv[r * k + c] ^= gf::mul(f, inv[col * k + c]);
                }
            }
        }
        return inv;
    }

    CodecParams p_;
    std::vector<std::uint8_t> gen_;  // n x k, row-major, top block identity
};

}  // namespace radon
