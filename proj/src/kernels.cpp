#include "cubemix/kernels.hpp"

#include <algorithm>
#include <array>

namespace cubemix {
namespace {

constexpr std::size_t kBlock = kCornerOriCount;
constexpr double kInvMoves = 1.0 / kMoveCount;

void check_sizes(std::size_t in, std::size_t out, std::size_t expected) {
  if (in != expected || out != expected) throw std::invalid_argument("distribution has the wrong size");
}

}  // namespace

void evolve_corner_step(std::span<const double> in, std::span<double> out, const CornerMoveTables& tables,
                        Exec exec) {
  check_sizes(in.size(), out.size(), kCornerCoordCount);
  const bool par = exec == Exec::Parallel;
#pragma omp parallel if (par)
  {
    std::array<double, kCornerOriCount> acc{};
#pragma omp for schedule(static)
    for (std::int64_t p = 0; p < static_cast<std::int64_t>(kCornerPermCount); ++p) {
      acc.fill(0.0);
      for (int m = 0; m < kMoveCount; ++m) {
        const double* src = in.data() + static_cast<std::size_t>(tables.next_perm(static_cast<std::uint32_t>(p), m)) *
                                            kCornerOriCount;
        const std::uint16_t* ori = tables.ori.data() + static_cast<std::size_t>(m) * kCornerOriCount;
        for (std::uint32_t o = 0; o < kCornerOriCount; ++o) acc[o] += src[ori[o]];
      }
      double* dst = out.data() + static_cast<std::size_t>(p) * kCornerOriCount;
      for (std::uint32_t o = 0; o < kCornerOriCount; ++o) dst[o] = acc[o] * kInvMoves;
    }
  }
}

void evolve_table_step(std::span<const double> in, std::span<double> out, std::span<const std::uint32_t> next,
                       Exec exec) {
  if (in.size() != out.size() || next.size() != in.size() * kMoveCount)
    throw std::invalid_argument("transition table does not match distribution size");
  const auto n = static_cast<std::int64_t>(in.size());
  const bool par = exec == Exec::Parallel;
#pragma omp parallel for schedule(static) if (par)
  for (std::int64_t j = 0; j < n; ++j) {
    const std::uint32_t* row = next.data() + static_cast<std::size_t>(j) * kMoveCount;
    double acc = 0.0;
    for (int m = 0; m < kMoveCount; ++m) acc += in[row[m]];
    out[j] = acc * kInvMoves;
  }
}

void evolve_corner_step_reference(std::span<const double> in, std::span<double> out,
                                  const CornerMoveTables& tables) {
  check_sizes(in.size(), out.size(), kCornerCoordCount);
  std::fill(out.begin(), out.end(), 0.0);
  for (std::uint32_t i = 0; i < kCornerCoordCount; ++i) {
    if (in[i] == 0.0) continue;
    const double share = in[i] / kMoveCount;
    for (int m = 0; m < kMoveCount; ++m) out[tables.next_flat(i, m)] += share;
  }
}

double tv_to_uniform(std::span<const double> p, Exec exec) {
  const double u = 1.0 / static_cast<double>(p.size());
  const std::size_t blocks = (p.size() + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  const bool par = exec == Exec::Parallel;
#pragma omp parallel for schedule(static) if (par)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(p.size(), lo + kBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
      if (p[i] > u) s += p[i] - u;
    partial[b] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

void project_labels(std::span<const double> p, std::span<const std::uint8_t> labels, std::span<double> out,
                    Exec exec) {
  if (p.size() != labels.size()) throw std::invalid_argument("label table does not match distribution size");
  constexpr std::size_t kBins = 256;
  const std::size_t blocks = (p.size() + kBlock - 1) / kBlock;
  const std::size_t bins = out.size();
  std::vector<double> partial(blocks * bins, 0.0);
  const bool par = exec == Exec::Parallel;
  int max_label = 0;
#pragma omp parallel for schedule(static) reduction(max : max_label) if (par)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    std::array<double, kBins> local{};
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(p.size(), lo + kBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      local[labels[i]] += p[i];
      max_label = std::max<int>(max_label, labels[i]);
    }
    std::copy_n(local.begin(), std::min(bins, kBins), partial.begin() + static_cast<std::ptrdiff_t>(b * bins));
  }
  if (static_cast<std::size_t>(max_label) >= bins) throw std::out_of_range("label exceeds projection support");
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t k = 0; k < bins; ++k) out[k] += partial[b * bins + k];
}

}  // namespace cubemix
