// Certified evaluation of exponential integrals over rational polytopes:
//
//   integrate_exp(P, xi)            encloses  int_P e^{<xi,u>} du
//   integrate_linear_exp(P, xi, v)  encloses  int_P <v,u> e^{<xi,u>} du
//
// for every xi in the input interval box. Each simplex contributes
// n! * vol * exp[t_0,...,t_n], the divided difference of exp at the nodes
// t_i = <xi, v_i>; nodes closer than the cluster threshold (and interval
// nodes whose difference straddles 0) are handled by a truncated Taylor
// expansion of the divided difference with a certified remainder, so the
// evaluation never divides by an interval containing zero.
#ifndef KSOL_EXPINT_HPP
#define KSOL_EXPINT_HPP

#include "ksol/interval.hpp"
#include "ksol/polytope.hpp"

namespace ksol {

// Enclosure of the divided difference exp[t_0,...,t_d] (nodes may repeat and
// may be intervals; the result encloses the divided difference for every
// selection of representatives). Always defined.
IntervalScalar exp_divided_difference(std::vector<IntervalScalar> nodes, Precision p,
                                      int taylor_terms = 30);

// Division-free evaluation of the same quantity: global Taylor series about
// the node center with a certified tail bound, order chosen from the node
// spread. Independent of the recurrence path; used as a cross-check oracle.
IntervalScalar exp_divided_difference_series(const std::vector<IntervalScalar>& nodes,
                                             Precision p);

// n! * vol(s) * exp[t_0,...,t_n]  ==  int_s e^{<xi,u>} du
IntervalScalar simplex_exp(const Simplex& s, const IntervalVector& xi);

// int_s lambda_i(u) e^{<xi,u>} du  ==  n! * vol(s) * exp[t_0,...,t_n,t_i]
IntervalScalar weighted_exp(const Simplex& s, const IntervalVector& xi, int vertex_index);

IntervalScalar integrate_exp(const Polytope& p, const IntervalVector& xi);
IntervalScalar integrate_linear_exp(const Polytope& p, const IntervalVector& xi,
                                    const QVector& v);

// Non-certified double-precision variants used for search hints only.
double exp_dd_double(std::vector<double> nodes);
double integrate_exp_double(const Polytope& p, const std::vector<double>& xi);
double integrate_linear_exp_double(const Polytope& p, const std::vector<double>& xi,
                                   const QVector& v);

}  // namespace ksol

#endif
