#include "lrfs/assignment.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace lrfs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::optional<Assignment> solve_assignment(const Eigen::MatrixXd& cost) {
    const auto n = static_cast<int>(cost.rows());
    const auto m = static_cast<int>(cost.cols());
    if (n > m) throw std::invalid_argument("solve_assignment requires rows <= cols");
    if (n == 0) return Assignment{{}, 0.0};

    // Shortest augmenting path with row/column potentials, 1-based with a
    // virtual column 0.
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
    std::vector<int> p(m + 1, 0), way(m + 1, 0);
    std::vector<char> used(m + 1);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), kInf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = kInf;
            int j1 = -1;
            for (int j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double a = cost(i0 - 1, j - 1);
                const double cur = std::isinf(a) ? kInf : a - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if (j1 < 0 || std::isinf(delta)) return std::nullopt;
            for (int j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    Assignment out;
    out.row_to_col.assign(n, -1);
    for (int j = 1; j <= m; ++j)
        if (p[j] != 0) out.row_to_col[p[j] - 1] = j - 1;
    for (int r = 0; r < n; ++r) out.cost += cost(r, out.row_to_col[r]);
    return out;
}

namespace {

struct MurtyNode {
    Eigen::MatrixXd cost;
    Assignment solution;
    int fixed_rows = 0;
    std::size_t order = 0;
};

struct NodeCompare {
    bool operator()(const MurtyNode& a, const MurtyNode& b) const {
        if (a.solution.cost != b.solution.cost) return a.solution.cost > b.solution.cost;
        return a.order > b.order;
    }
};

}  // namespace

std::vector<Assignment> murty_k_best(const Eigen::MatrixXd& cost, std::size_t k) {
    std::vector<Assignment> out;
    if (k == 0) return out;
    auto first = solve_assignment(cost);
    if (!first) return out;

    std::size_t counter = 0;
    std::priority_queue<MurtyNode, std::vector<MurtyNode>, NodeCompare> queue;
    queue.push(MurtyNode{cost, std::move(*first), 0, counter++});

    const auto n = static_cast<int>(cost.rows());
    while (!queue.empty() && out.size() < k) {
        MurtyNode node = queue.top();
        queue.pop();
        out.push_back(node.solution);
        if (out.size() == k) break;

        Eigen::MatrixXd constrained = node.cost;
        for (int r = node.fixed_rows; r < n; ++r) {
            const int c = node.solution.row_to_col[r];
            Eigen::MatrixXd child = constrained;
            child(r, c) = kInf;
            if (auto sol = solve_assignment(child))
                queue.push(MurtyNode{child, std::move(*sol), r, counter++});
            // Force row r to column c for the remaining partitions.
            const double keep = constrained(r, c);
            constrained.row(r).setConstant(kInf);
            constrained.col(c).setConstant(kInf);
            constrained(r, c) = keep;
        }
    }
    return out;
}

}  // namespace lrfs
