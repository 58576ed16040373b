#pragma once

#include "graded/errors.hpp"

#include <gmpxx.h>

#include <cctype>
#include <ostream>
#include <string>
#include <string_view>

namespace graded {

/// Exact element of Q(i): re + im*i with arbitrary-precision rational parts.
/// Both parts are always canonical (gcd 1, positive denominator), so equality
/// is structural.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : re_(v) {}
    Scalar(int v) : re_(v) {}
    Scalar(long num, long den) : re_(num, den) { re_.canonicalize(); }
    Scalar(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar imaginary_unit() { return Scalar(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    Scalar conj() const {
        if (is_real())
            return *this;
        return Scalar(re_, -im_);
    }

    /// |z|^2, always real and nonnegative.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        if (!o.is_real())
            im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        if (!o.is_real())
            im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        if (is_real() && o.is_real()) {
            re_ *= o.re_;
            return *this;
        }
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero())
            throw std::domain_error("division by zero scalar");
        if (o.is_real()) {
            re_ /= o.re_;
            if (!is_real())
                im_ /= o.re_;
            return *this;
        }
        mpq_class n = o.norm();
        *this *= o.conj();
        re_ /= n;
        im_ /= n;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// "p/q" for reals (denominator omitted when 1), "p/q+r/s*i" otherwise.
    std::string to_string() const {
        if (is_real())
            return re_.get_str();
        std::string s = re_.get_str();
        if (sgn(im_) >= 0)
            s += "+";
        return s + im_.get_str() + "*i";
    }

    /// Parses "p", "p/q", "p/q+r/s*i", "p/q-r/s*i" and the pure imaginary
    /// forms "r/s*i", "i", "-i". Whitespace is not allowed.
    static Scalar parse(std::string_view text) {
        auto fail = [&] { return MalformedInput("bad scalar \"" + std::string(text) + "\""); };
        if (text.empty())
            throw fail();
        auto parse_rational = [&](std::string_view s) {
            // [sign] digits [/ digits]
            std::size_t k = 0;
            if (k < s.size() && (s[k] == '+' || s[k] == '-'))
                ++k;
            std::size_t digits = 0, slash = std::string_view::npos;
            for (std::size_t p = k; p < s.size(); ++p) {
                if (std::isdigit(static_cast<unsigned char>(s[p]))) {
                    ++digits;
                } else if (s[p] == '/' && slash == std::string_view::npos && p > k) {
                    slash = p;
                } else {
                    throw fail();
                }
            }
            if (digits == 0 || (slash != std::string_view::npos && slash + 1 == s.size()))
                throw fail();
            std::string str(s.front() == '+' ? s.substr(1) : s);
            mpq_class q;
            if (q.set_str(str, 10) != 0)
                throw fail();
            if (sgn(q.get_den()) == 0)
                throw fail();
            q.canonicalize();
            return q;
        };
        if (text.back() != 'i')
            return Scalar(parse_rational(text));
        // imaginary part present
        std::string_view body = text.substr(0, text.size() - 1);
        if (!body.empty() && body.back() == '*')
            body.remove_suffix(1);
        else if (!body.empty() && body.back() != '+' && body.back() != '-')
            throw fail();
        // split at the last sign that is not the leading one
        std::size_t split = std::string_view::npos;
        for (std::size_t p = body.size(); p-- > 1;)
            if (body[p] == '+' || body[p] == '-') {
                split = p;
                break;
            }
        std::string_view re_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
        std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
        mpq_class im;
        if (im_part.empty() || im_part == "+")
            im = 1;
        else if (im_part == "-")
            im = -1;
        else
            im = parse_rational(im_part);
        mpq_class re = re_part.empty() ? mpq_class(0) : parse_rational(re_part);
        return Scalar(std::move(re), std::move(im));
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

} // namespace graded
