#include "ddg/experiment.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ddg/errors.hpp"
#include "ddg/graph.hpp"
#include "ddg/pipeline.hpp"
#include "ddg/rng.hpp"

namespace ddg {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& rows, bool stable) {
    out << "schema,v1\n";
    out << "N,seed,delta,distinct_count,u_size,uprime_size,balanced_size,retries_used,"
           "wall_ms,error\n";
    for (const auto& r : rows) {
        out << r.N << ',' << r.seed << ',' << r.delta.str() << ',' << r.distinct_count << ','
            << r.u_size << ',' << r.uprime_size << ',' << r.balanced_size << ','
            << r.retries_used << ',' << (stable ? 0 : r.wall_ms) << ',' << csv_field(r.error)
            << '\n';
    }
}

ScalingSummary run_scaling(const std::vector<int>& sizes, int trials, const Fraction& delta,
                           uint64_t seed, int jobs, int retries,
                           std::vector<ExperimentRecord>& rows_out) {
    if (trials < 1) throw PreconditionViolated("trials >= 1", std::to_string(trials));
    for (int N : sizes)
        if (N < 64) throw PreconditionViolated("each N >= 64", std::to_string(N));

    const int ns = int(sizes.size());
    rows_out.assign(static_cast<size_t>(ns) * static_cast<size_t>(trials), ExperimentRecord{});

#ifdef _OPENMP
    int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for collapse(2) schedule(dynamic) num_threads(threads)
#else
    (void)jobs;
#endif
    for (int si = 0; si < ns; ++si) {
        for (int t = 0; t < trials; ++t) {
            const int N = sizes[static_cast<size_t>(si)];
            const uint64_t tseed = mix_seed(seed, uint64_t(N), uint64_t(t));
            ExperimentRecord rec;
            rec.N = N;
            rec.seed = tseed;
            rec.delta = delta;
            try {
                Graph g = gen_erdos_renyi(N, 0.5, mix_seed(tseed, 1));
                pipeline::PipelineParams pp;
                pp.delta = delta;
                pp.retries = retries;
                pp.seed = mix_seed(tseed, 2);
                auto result = pipeline::run_pipeline(g, pp);
                rec = result.record;
                rec.seed = tseed;  // the row reproduces from the trial seed
            } catch (const Error& e) {
                rec.distinct_count = 0;
                rec.error = e.what();
            }
            rows_out[static_cast<size_t>(si) * static_cast<size_t>(trials) + static_cast<size_t>(t)] = rec;
        }
    }

    ScalingSummary sum;
    sum.sizes = sizes;
    for (int si = 0; si < ns; ++si) {
        double mean = 0;
        for (int t = 0; t < trials; ++t)
            mean += rows_out[static_cast<size_t>(si) * static_cast<size_t>(trials) + static_cast<size_t>(t)].distinct_count;
        mean /= trials;
        double var = 0;
        for (int t = 0; t < trials; ++t) {
            double d = rows_out[static_cast<size_t>(si) * static_cast<size_t>(trials) + static_cast<size_t>(t)].distinct_count - mean;
            var += d * d;
        }
        sum.mean_distinct.push_back(mean);
        sum.stddev_distinct.push_back(std::sqrt(var / trials));
    }

    std::vector<double> xs, ys;
    for (int si = 0; si < ns; ++si)
        if (sum.mean_distinct[static_cast<size_t>(si)] > 0) {
            xs.push_back(std::log2(double(sizes[static_cast<size_t>(si)])));
            ys.push_back(std::log2(sum.mean_distinct[static_cast<size_t>(si)]));
        }
    if (xs.size() >= 3) {
        double xm = 0, ym = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            xm += xs[i];
            ym += ys[i];
        }
        xm /= double(xs.size());
        ym /= double(ys.size());
        double num = 0, den = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            num += (xs[i] - xm) * (ys[i] - ym);
            den += (xs[i] - xm) * (xs[i] - xm);
        }
        if (den > 0) {
            sum.slope = num / den;
            sum.slope_valid = true;
        }
    }
    return sum;
}

std::string summary_json(const ScalingSummary& s) {
    std::ostringstream os;
    os << "{\"points\":[";
    for (size_t i = 0; i < s.sizes.size(); ++i) {
        if (i) os << ',';
        os << "{\"N\":" << s.sizes[i] << ",\"log2_n\":" << fmt(std::log2(double(s.sizes[i])))
           << ",\"mean_distinct\":" << fmt(s.mean_distinct[i])
           << ",\"stddev_distinct\":" << fmt(s.stddev_distinct[i]) << "}";
    }
    os << "],\"slope_valid\":" << (s.slope_valid ? "true" : "false");
    os << ",\"slope\":" << (s.slope_valid ? fmt(s.slope) : "null") << "}";
    return os.str();
}

}  // namespace ddg
