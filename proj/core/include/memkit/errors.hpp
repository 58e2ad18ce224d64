#pragma once

#include <stdexcept>
#include <string>

namespace memkit {

// Base class for all typed memkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- data model ---

class NegativeValue : public Error {
public:
    explicit NegativeValue(const std::string& msg) : Error(msg) {}
};

class EmptyIntersection : public Error {
public:
    explicit EmptyIntersection(const std::string& msg) : Error(msg) {}
};

class MismatchedReturns : public Error {
public:
    explicit MismatchedReturns(const std::string& msg) : Error(msg) {}
};

class StationarityError : public Error {
public:
    explicit StationarityError(const std::string& msg) : Error(msg) {}
};

// --- ingestion ---

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t row, const std::string& column)
        : Error(msg + " (row " + std::to_string(row) + ", column '" + column + "')"),
          row(row),
          column(column) {}
    std::size_t row;
    std::string column;
};

class DuplicateDate : public Error {
public:
    explicit DuplicateDate(const std::string& msg) : Error(msg) {}
};

// --- smoothing ---

class DegenerateWeights : public Error {
public:
    explicit DegenerateWeights(const std::string& msg) : Error(msg) {}
};

class ZeroVariance : public Error {
public:
    explicit ZeroVariance(const std::string& msg) : Error(msg) {}
};

// --- estimation ---

class NonPositiveXi : public Error {
public:
    NonPositiveXi(std::size_t t, std::size_t series)
        : Error("non-positive xi at t=" + std::to_string(t) + ", series " + std::to_string(series)),
          t(t),
          series(series) {}
    std::size_t t;
    std::size_t series;
};

class NoConvergence : public Error {
public:
    NoConvergence(int iterations, double gradient_norm)
        : Error("no convergence after " + std::to_string(iterations) +
                " iterations (gradient max-norm " + std::to_string(gradient_norm) + ")"),
          iterations(iterations),
          gradient_norm(gradient_norm) {}
    int iterations;
    double gradient_norm;
};

class SingularA : public Error {
public:
    explicit SingularA(const std::string& msg) : Error(msg) {}
};

class SingularSigma : public Error {
public:
    explicit SingularSigma(const std::string& msg) : Error(msg) {}
};

class SingularSubmatrix : public Error {
public:
    explicit SingularSubmatrix(const std::string& msg) : Error(msg) {}
};

// --- diagnostics / goodness of fit ---

class NonPositiveDf : public Error {
public:
    explicit NonPositiveDf(const std::string& msg) : Error(msg) {}
};

class SingularC0 : public Error {
public:
    explicit SingularC0(const std::string& msg) : Error(msg) {}
};

class ConstantSeries : public Error {
public:
    explicit ConstantSeries(const std::string& msg) : Error(msg) {}
};

class TooFewObservations : public Error {
public:
    explicit TooFewObservations(const std::string& msg) : Error(msg) {}
};

class UnattainableVariance : public Error {
public:
    explicit UnattainableVariance(const std::string& msg) : Error(msg) {}
};

// --- simulation / misc ---

class InvalidSpec : public Error {
public:
    explicit InvalidSpec(const std::string& msg) : Error(msg) {}
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

}  // namespace memkit
