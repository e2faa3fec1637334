#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vecsum/coreset.hpp"

namespace vecsum {

enum class Generator {
    Gaussian,        // n dense standard-normal vectors in R^d
    IdentityRows,    // the n rows of the n x n identity
    SparseGaussian,  // s non-zeros per vector at random coordinates, values N(mu, sigma^2)
    GpsFile,         // proximity updates of the busiest user in a gps trace
    EdgeFile,        // per-endpoint degree updates from an edge list
};

enum class Method { Coreset, UniformSample, CountMin, CountSketch };

struct ExperimentConfig {
    Generator gen = Generator::Gaussian;
    std::size_t n = 1000;
    std::size_t d = 10;
    // SparseGaussian value model.
    std::size_t sparsity = 8;
    double mu = 5.0;
    double sigma = 1.0;
    // Input file for GpsFile / EdgeFile.
    std::string path;
    std::vector<std::size_t> betas;
    std::vector<std::uint64_t> seeds;
    std::vector<Method> methods{Method::Coreset};
    std::size_t leaf_size = 256;
    SelectionRule rule = SelectionRule::LinearOracle;
    std::size_t sketch_depth = 5;
};

struct ResultRow {
    std::string method;
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t beta = 0;          // budget parameter the row was run at
    std::uint64_t seed = 0;
    double error = 0.0;            // l2 distance to the exact weighted mean
    double sq_error_over_var = 0.0;
    double runtime_ms = 0.0;
    std::size_t stored_scalars = 0;
};

// n i.i.d. standard-normal points in R^d with uniform weights,
// reproducible per seed (and identical across platforms).
WeightedPointSet gen_gaussian(std::size_t n, std::size_t d, std::uint64_t seed);

// Rows of the n x n identity, uniform weights.
WeightedPointSet gen_identity_rows(std::size_t n);

// n vectors with s non-zeros at distinct random coordinates of 0..d-1,
// values drawn N(mu, sigma^2), uniform weights.
WeightedPointSet gen_sparse_gaussian(std::size_t n, std::size_t d, std::size_t s,
                                     double mu, double sigma, std::uint64_t seed);

// Replays a gps trace and returns the row-update stream of the user that
// received the most updates, as points over user indices (uniform weights).
WeightedPointSet gen_from_gps_file(const std::string& path, double scale = 1.0);

// One weight-w point per edge endpoint (coordinate = node index), so the
// stream's sum is the weighted degree vector. Uniform weights.
WeightedPointSet gen_from_edge_file(const std::string& path);

// Ground-truth weighted mean, accumulated in extended precision with
// compensated summation; the reference for every error column.
DenseVector brute_force_mean(const WeightedPointSet& P);

// sum_i u_i ||p_i - mean||^2 in extended precision.
double brute_force_variance(const WeightedPointSet& P, const DenseVector& mean);

// Runs every (method, beta, seed) cell on shared per-seed data and returns
// rows sorted by (method, beta, seed). Sketch methods get the scalar budget
// measured on the coreset built at the same (beta, seed).
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);

// Exactly "method,n,d,beta,seed,error,sq_error_over_var,runtime_ms,stored_scalars".
std::string csv_header();
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

const char* method_name(Method m);

} // namespace vecsum
