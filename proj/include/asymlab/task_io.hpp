#ifndef ASYMLAB_TASK_IO_HPP
#define ASYMLAB_TASK_IO_HPP

#include "asymlab/planning.hpp"

#include <iosfwd>
#include <string>

namespace asymlab {

// Line-oriented task format; see docs/formats.md. Facts are declared up
// front, actions as blocks, init/goal as fact lists.
void write_task(const PlanningTask& task, std::ostream& out);
PlanningTask read_task(std::istream& in);

// PDDL subset: every fact becomes a nullary predicate.
void write_pddl_domain(const PlanningTask& task, std::ostream& out);
void write_pddl_problem(const PlanningTask& task, std::ostream& out);

} // namespace asymlab

#endif
