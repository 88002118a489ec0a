#pragma once

#include <complex>
#include <string>

#include "squeeze/log_scalar.hpp"

namespace squeeze {

// squeezing parameter xi = r e^{i phi}, r >= 0
struct SqueezeParam {
    double r = 0.0;
    double phi = 0.0;
};

// quantities shared by every closed-form route
struct DerivedParam {
    double eta;     // 2 ln cosh r
    double tanh_r;  // tanh r = sin(theta)
    double x;       // 1 / cosh r = cos(theta)
    double theta;   // atan2(tanh r, 1/cosh r)
    double z;       // -sinh^2 r (overflows to -inf past r ~ 355; only the sum routes consume it)
    double s;       // e^r
};
DerivedParam derive(const SqueezeParam& p);

struct IndexPair {
    long m = 0;  // outgoing Fock index
    long n = 0;  // incoming Fock index
};

struct ElementResult {
    std::complex<double> value;  // exp of log_form; underflows to 0 when |log| is very negative
    LogComplex log_form;
    std::string condition_note;  // set when internal cancellation exceeded ~6 digits
};

}  // namespace squeeze
