#pragma once
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "wpgrec/errors.hpp"

namespace wpgrec {

// Live/peak byte accounting for every tensor buffer; read by the bench command.
struct TensorAllocStats {
    inline static std::size_t live_bytes = 0;
    inline static std::size_t peak_bytes = 0;

    static void reset_peak() { peak_bytes = live_bytes; }
};

template <class T>
struct CountingAlloc {
    using value_type = T;

    CountingAlloc() = default;
    template <class U>
    CountingAlloc(const CountingAlloc<U>&) {}

    T* allocate(std::size_t n) {
        TensorAllocStats::live_bytes += n * sizeof(T);
        TensorAllocStats::peak_bytes = std::max(TensorAllocStats::peak_bytes, TensorAllocStats::live_bytes);
        return std::allocator<T>{}.allocate(n);
    }
    void deallocate(T* p, std::size_t n) {
        TensorAllocStats::live_bytes -= n * sizeof(T);
        std::allocator<T>{}.deallocate(p, n);
    }
    bool operator==(const CountingAlloc&) const { return true; }
};

// Dense row-major f64 tensor. Values are plain data; all structure lives in ops.
class Tensor {
public:
    using Storage = std::vector<double, CountingAlloc<double>>;

    Tensor() = default;
    explicit Tensor(std::vector<std::size_t> shape)
        : shape_(std::move(shape)), v_(count(shape_), 0.0) {}
    Tensor(std::vector<std::size_t> shape, double fill)
        : shape_(std::move(shape)), v_(count(shape_), fill) {}
    Tensor(std::vector<std::size_t> shape, std::initializer_list<double> vals)
        : shape_(std::move(shape)), v_(vals.begin(), vals.end()) {
        if (v_.size() != count(shape_))
            throw ShapeError("tensor init list size does not match shape " + shape_str(shape_));
    }

    static Tensor scalar(double x) { return Tensor({1}, {x}); }

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t rank() const { return shape_.size(); }
    std::size_t numel() const { return v_.size(); }
    bool is_scalar() const { return v_.size() == 1; }

    std::size_t rows() const { return shape_.empty() ? 0 : shape_[0]; }
    std::size_t cols() const {
        if (shape_.size() == 1) return 1;
        if (shape_.size() == 2) return shape_[1];
        throw ShapeError("cols() on tensor of rank " + std::to_string(shape_.size()));
    }

    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    double& operator[](std::size_t i) { return v_[i]; }
    double operator[](std::size_t i) const { return v_[i]; }
    double& at(std::size_t r, std::size_t c) { return v_[r * shape_[1] + c]; }
    double at(std::size_t r, std::size_t c) const { return v_[r * shape_[1] + c]; }

    bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

    static std::size_t count(const std::vector<std::size_t>& shape) {
        std::size_t n = 1;
        for (std::size_t d : shape) n *= d;
        return n;
    }

    static std::string shape_str(const std::vector<std::size_t>& shape) {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "x" : "") << shape[i];
        os << "]";
        return os.str();
    }
    std::string shape_str() const { return shape_str(shape_); }

private:
    std::vector<std::size_t> shape_;
    Storage v_;
};

inline void check_same_shape(const char* op, const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b))
        throw ShapeError(std::string(op) + ": shape mismatch " + a.shape_str() + " vs " + b.shape_str());
}

// y = A B, (m,k)x(k,n). i-k-j order so the inner loop streams rows of B.
inline Tensor matmul_plain(const Tensor& a, const Tensor& b) {
    if (a.rank() != 2 || b.rank() != 2 || a.shape()[1] != b.shape()[0])
        throw ShapeError("matmul: incompatible shapes " + a.shape_str() + " x " + b.shape_str());
    const std::size_t m = a.shape()[0], k = a.shape()[1], n = b.shape()[1];
    Tensor y({m, n});
    const double* __restrict pa = a.data();
    const double* __restrict pb = b.data();
    double* __restrict py = y.data();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
            const double aik = pa[i * k + p];
            if (aik == 0.0) continue;
            const double* brow = pb + p * n;
            double* yrow = py + i * n;
            for (std::size_t j = 0; j < n; ++j) yrow[j] += aik * brow[j];
        }
    }
    return y;
}

// y = A B^T, (m,k)x(n,k) -> (m,n).
inline Tensor matmul_nt_plain(const Tensor& a, const Tensor& b) {
    if (a.rank() != 2 || b.rank() != 2 || a.shape()[1] != b.shape()[1])
        throw ShapeError("matmul_nt: incompatible shapes " + a.shape_str() + " x " + b.shape_str() + "^T");
    const std::size_t m = a.shape()[0], k = a.shape()[1], n = b.shape()[0];
    Tensor y({m, n});
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a.data() + i * k;
        double* yrow = y.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            const double* brow = b.data() + j * k;
            double s = 0.0;
            for (std::size_t p = 0; p < k; ++p) s += arow[p] * brow[p];
            yrow[j] = s;
        }
    }
    return y;
}

inline double dot(const Tensor& a, const Tensor& b) {
    check_same_shape("dot", a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.numel(); ++i) s += a[i] * b[i];
    return s;
}

inline bool all_finite(const Tensor& t) {
    for (std::size_t i = 0; i < t.numel(); ++i)
        if (!std::isfinite(t[i])) return false;
    return true;
}

} // namespace wpgrec
