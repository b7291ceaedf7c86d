#pragma once

#include <map>
#include <string>

#include "pirbound/lp.hpp"

namespace pirbound {

// Options for the two-database/two-message entropy LP encodings.
struct ModelOptions {
  bool include_symmetry = true;
  bool include_pseudo = false;
  Rational objective_alpha = 1;  // c_alpha, >= 0
  Rational objective_beta = 1;   // c_beta, >= 0; not both zero
};

// An assembled entropy LP over the answer-variety variables, optionally
// extended with mirrored pseudo-message variables. The program minimizes
// c_alpha * alpha + c_beta * beta over the Shannon cone intersected with the
// structural rows (message sizes, determinism, decodability, storage and
// download links, optional symmetry, and in the extended model the Markov and
// mirror equalities).
struct PirLpModel {
  LinearProgram program;
  std::map<std::string, std::string> roles;  // variable label -> role
  std::string alpha_name = "alpha";
  std::string beta_name = "beta";

  // Copy of the model with one extra tagged row.
  PirLpModel with_constraint(Constraint extra) const;
};

// Ground set {W1,W2,X1,X2,X3,Y1,Y2}: message structure, answer determinism,
// the four decodability rows, storage/download links and (optionally) the
// single-answer and answer-message symmetry equalities, on top of the full
// elemental family. Requires opts.include_pseudo == false.
PirLpModel build_base_model(const ModelOptions& opts = {});

// The 11-variable extension {.., U1,U2,V1,V2}: everything from the base model
// plus the two Markov-coupling rows and the 36 mirror equalities that copy
// W-marginals onto the pseudo messages. Requires opts.include_pseudo == true.
PirLpModel build_pseudo_model(const ModelOptions& opts);

struct ObjectiveRun {
  Solution solution;
  DualCertificate certificate;
  CertificateCheck check;
};

// Solves min c_alpha*alpha + c_beta*beta over the model and returns the
// optimum together with an exactly verified certificate.
ObjectiveRun minimize_objective(const PirLpModel& model, const Rational& c_alpha,
                                const Rational& c_beta, const SolveOptions& options = {});

}  // namespace pirbound
