#include "asymlab/task_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace asymlab {

namespace {

std::vector<std::string> words(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string w;
    while (in >> w)
        out.push_back(w);
    return out;
}

void write_fact_list(const PlanningTask& task, const std::vector<FactId>& ids,
                     std::ostream& out) {
    for (FactId f : ids)
        out << ' ' << task.facts[static_cast<std::size_t>(f)];
}

// PDDL identifiers cannot contain '^'; '_up_' keeps names readable.
std::string pddl_name(std::string s) {
    std::string out;
    for (char c : s)
        out += (c == '^') ? std::string("_up_") : std::string(1, c);
    return out;
}

} // namespace

void write_task(const PlanningTask& task, std::ostream& out) {
    out << "task " << (task.name.empty() ? "unnamed" : task.name) << '\n';
    if (task.allow_parallel)
        out << "parallel 1\n";
    for (const auto& f : task.facts)
        out << "fact " << f << '\n';
    for (const auto& a : task.actions) {
        out << "action " << a.name << '\n';
        out << "  pre";
        write_fact_list(task, a.pre, out);
        out << "\n  add";
        write_fact_list(task, a.add, out);
        out << "\n  del";
        write_fact_list(task, a.del, out);
        out << '\n';
        if (a.group != 0)
            out << "  group " << a.group << '\n';
        out << "end\n";
    }
    out << "init";
    write_fact_list(task, task.init, out);
    out << "\ngoal";
    write_fact_list(task, task.goal, out);
    out << '\n';
}

PlanningTask read_task(std::istream& in) {
    PlanningTask task;
    std::string line;
    Action cur;
    bool in_action = false;

    auto fact_ids = [&](const std::vector<std::string>& w, std::size_t from) {
        std::vector<FactId> ids;
        for (std::size_t i = from; i < w.size(); ++i) {
            FactId f = task.fact_by_name(w[i]);
            if (f < 0)
                throw ParseError("unknown fact: " + w[i]);
            ids.push_back(f);
        }
        return ids;
    };

    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        auto w = words(line);
        if (w.empty())
            continue;
        const std::string& key = w[0];
        if (in_action) {
            if (key == "pre")
                cur.pre = fact_ids(w, 1);
            else if (key == "add")
                cur.add = fact_ids(w, 1);
            else if (key == "del")
                cur.del = fact_ids(w, 1);
            else if (key == "group")
                cur.group = std::stoi(w.at(1));
            else if (key == "end") {
                task.actions.push_back(cur);
                in_action = false;
            } else
                throw ParseError("unexpected line in action block: " + line);
            continue;
        }
        if (key == "task")
            task.name = w.size() > 1 ? w[1] : "";
        else if (key == "parallel")
            task.allow_parallel = w.size() > 1 && w[1] != "0";
        else if (key == "fact")
            task.add_fact(w.at(1));
        else if (key == "action") {
            cur = Action{};
            cur.name = w.at(1);
            in_action = true;
        } else if (key == "init")
            task.init = fact_ids(w, 1);
        else if (key == "goal")
            task.goal = fact_ids(w, 1);
        else
            throw ParseError("unexpected line: " + line);
    }
    if (in_action)
        throw ParseError("unterminated action block");
    task.check();
    return task;
}

void write_pddl_domain(const PlanningTask& task, std::ostream& out) {
    out << "(define (domain " << pddl_name(task.name.empty() ? "task" : task.name) << ")\n";
    out << "  (:requirements :strips)\n  (:predicates";
    for (const auto& f : task.facts)
        out << " (" << pddl_name(f) << ")";
    out << ")\n";
    for (const auto& a : task.actions) {
        out << "  (:action " << pddl_name(a.name) << "\n    :precondition (and";
        for (FactId f : a.pre)
            out << " (" << pddl_name(task.facts[static_cast<std::size_t>(f)]) << ")";
        out << ")\n    :effect (and";
        for (FactId f : a.add)
            out << " (" << pddl_name(task.facts[static_cast<std::size_t>(f)]) << ")";
        for (FactId f : a.del)
            out << " (not (" << pddl_name(task.facts[static_cast<std::size_t>(f)]) << "))";
        out << "))\n";
    }
    out << ")\n";
}

void write_pddl_problem(const PlanningTask& task, std::ostream& out) {
    std::string name = pddl_name(task.name.empty() ? "task" : task.name);
    out << "(define (problem " << name << "-p)\n  (:domain " << name << ")\n  (:init";
    for (FactId f : task.init)
        out << " (" << pddl_name(task.facts[static_cast<std::size_t>(f)]) << ")";
    out << ")\n  (:goal (and";
    for (FactId f : task.goal)
        out << " (" << pddl_name(task.facts[static_cast<std::size_t>(f)]) << ")";
    out << ")))\n";
}

} // namespace asymlab
