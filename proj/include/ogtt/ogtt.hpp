#ifndef OGTT_OGTT_HPP
#define OGTT_OGTT_HPP

#include "ogtt/bayes.hpp"
#include "ogtt/cohort.hpp"
#include "ogtt/ensemble.hpp"
#include "ogtt/error.hpp"
#include "ogtt/nelder_mead.hpp"
#include "ogtt/oscillator.hpp"
#include "ogtt/pipeline.hpp"
#include "ogtt/posterior.hpp"
#include "ogtt/random.hpp"
#include "ogtt/svm.hpp"

#endif // OGTT_OGTT_HPP
