#pragma once

#include <vector>

#include "bnf/spectral.hpp"

namespace bnf::detail {

// Thread-local FFTW plans keyed by grid length; buffers are owned per plan.
class FftGrid {
public:
    explicit FftGrid(int n);
    ~FftGrid();
    FftGrid(const FftGrid&) = delete;
    FftGrid& operator=(const FftGrid&) = delete;

    int size() const { return n_; }
    // Band-limited coefficients -> samples u(x_k), x_k = 2 pi k / n.
    void synthesize(const FourierState& s, std::vector<cplx>& out);
    // Samples -> coefficients for |n| <= N (aliased onto the band).
    void analyze(const std::vector<cplx>& in, FourierState& out);

    static FftGrid& get(int n);

private:
    int n_;
    void* in_;
    void* out_;
    void* fwd_;
    void* bwd_;
};

}  // namespace bnf::detail
