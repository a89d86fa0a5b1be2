#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace rwm::oracle {

Mat adjacency(std::size_t n, const std::vector<WeightedEdge>& edges) {
    Mat a = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto& e : edges) {
        a(e.u, e.v) += e.w;
        a(e.v, e.u) += e.w;
    }
    return a;
}

Mat column_normalize(Mat m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const double s = m.col(c).sum();
        if (s > 0.0) m.col(c) /= s;
    }
    return m;
}

Mat transition(std::size_t n, const std::vector<WeightedEdge>& edges) {
    return column_normalize(adjacency(n, edges));
}

Mat cross(std::size_t n_from, std::size_t n_to, const std::vector<WeightedEdge>& records) {
    Mat s = Mat::Zero(static_cast<Eigen::Index>(n_to), static_cast<Eigen::Index>(n_from));
    for (const auto& r : records) s(r.v, r.u) += r.w;
    return column_normalize(s);
}

DenseMulti DenseMulti::from(const MultiNetwork& mn) {
    DenseMulti d;
    d.multiplex = mn.mode() == Mode::multiplex;
    const std::size_t k = mn.layer_count();
    for (std::size_t i = 0; i < k; ++i) d.p.push_back(transition(mn.layer(i).node_count(), mn.layer(i).edges()));
    d.s.assign(k, std::vector<std::optional<Mat>>(k));
    if (!d.multiplex) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                const auto* c = mn.cross(i, j);
                if (!c) continue;
                Mat m = Mat::Zero(static_cast<Eigen::Index>(c->rows()), static_cast<Eigen::Index>(c->cols()));
                for (std::size_t col = 0; col < c->cols(); ++col) {
                    const auto rows = c->column_rows(static_cast<NodeId>(col));
                    const auto vals = c->column_values(static_cast<NodeId>(col));
                    for (std::size_t t = 0; t < rows.size(); ++t)
                        m(rows[t], static_cast<Eigen::Index>(col)) = vals[t];
                }
                d.s[i][j] = m;
            }
        }
    }
    return d;
}

std::optional<Mat> DenseMulti::map(std::size_t i, std::size_t j) const {
    if (multiplex || i == j) {
        const auto n = p[j].rows();
        return Mat::Identity(n, n);
    }
    return s[i][j];
}

Mat modified_transition(const DenseMulti& d, std::size_t i, const Mat& w) {
    const auto n = d.p[i].rows();
    Mat out = Mat::Zero(n, n);
    const double row = w.row(static_cast<Eigen::Index>(i)).sum();
    for (std::size_t j = 0; j < d.k(); ++j) {
        const double wij = w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) / row;
        if (wij == 0.0) continue;
        const auto to = d.map(i, j);
        const auto back = d.map(j, i);
        if (!to || !back) continue;
        out += wij * (*back) * d.p[j] * (*to);
    }
    return column_normalize(out);
}

Vec rwr_fixpoint(const Mat& p, const Vec& e, double alpha) {
    const Mat a = Mat::Identity(p.rows(), p.cols()) - alpha * p;
    return (1.0 - alpha) * a.fullPivLu().solve(e);
}

DenseState dense_step(const DenseMulti& d, const DenseState& s, double alpha, double lambda,
                      bool update) {
    const std::size_t k = d.k();
    DenseState n = s;
    for (std::size_t i = 0; i < k; ++i) {
        const Mat op = modified_transition(d, i, s.w);
        Vec z = op * s.x[i];
        const double in = s.x[i].sum();
        const double got = z.sum();
        if (got <= 0.0) {
            n.x[i] = s.x0[i];
            continue;
        }
        if (got < in) z *= in / got;  // mass parked on empty columns is redistributed
        n.x[i] = alpha * z + (1.0 - alpha) * s.x0[i];
    }
    n.t = s.t + 1;
    if (!update) return n;
    std::vector<Vec> y(k);
    for (std::size_t i = 0; i < k; ++i) y[i] = (n.x[i] - (1.0 - alpha) * n.x0[i]).cwiseMax(0.0);
    const double decay = std::pow(lambda, static_cast<double>(n.t));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const auto back = d.map(j, i);
            if (!back) continue;
            const Vec mapped = (*back) * y[j];
            const double denom = y[i].norm() * mapped.norm();
            const double c = denom > 0.0 ? std::clamp(y[i].dot(mapped) / denom, 0.0, 1.0) : 0.0;
            n.w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += decay * c;
        }
    }
    return n;
}

double inf_norm(const Mat& a) { return a.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace rwm::oracle
