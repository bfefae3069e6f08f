#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "gdc/traces.hpp"

namespace gdc {

namespace {

constexpr const char* kMagic = "gdcsched-instance v1";

std::vector<std::string> split_ws(const std::string& line)
{
	std::vector<std::string> tokens;
	std::stringstream ss(line);
	std::string token;
	while (ss >> token)
		tokens.push_back(token);
	return tokens;
}

[[noreturn]] void fail(const std::string& source, int line_no, const std::string& what)
{
	throw std::runtime_error(source + ":" + std::to_string(line_no) + ": " + what);
}

} // namespace

void write_instance(const Instance& instance, std::ostream& out)
{
	out << kMagic << "\n";
	out << "[cluster]\n";
	out << "machines " << instance.machines << "\n";
	out << "horizon " << instance.horizon << "\n";
	out << "slot_minutes " << instance.slot_minutes << "\n";
	out << "[pricing]\n";
	out << "# dollars per machine-slot\n";
	out << "charge_rate " << format_rat(instance.charge_rate) << "\n";
	out << "price";
	for (const Money& b : instance.price)
		out << " " << format_rat(b);
	out << "\n";
	out << "[green]\n";
	out << "# machine-slots per slot\n";
	out << "supply";
	for (const Rat& g : instance.green)
		out << " " << format_rat(g);
	out << "\n";
	out << "[jobs]\n";
	out << "# job <id> <release> <length> <nodes> <least_quality>\n";
	for (const Job& j : instance.jobs)
		out << "job " << j.id << " " << j.release << " " << j.length << " "
		    << j.nodes << " " << format_rat(j.least_quality) << "\n";
}

std::string instance_to_text(const Instance& instance)
{
	std::ostringstream out;
	write_instance(instance, out);
	return out.str();
}

Instance read_instance(std::istream& in, const std::string& source)
{
	std::string line;
	int line_no = 0;

	if (!std::getline(in, line) || line != kMagic)
		throw std::runtime_error(source + ": not a '" + kMagic + "' file");
	++line_no;

	std::optional<int> machines, horizon;
	int slot_minutes = 60;
	std::optional<Money> charge_rate;
	std::vector<Money> price;
	std::vector<Rat> green;
	std::vector<Job> jobs;
	std::string section;

	while (std::getline(in, line)) {
		++line_no;
		auto tokens = split_ws(line);
		if (tokens.empty() || tokens[0][0] == '#')
			continue;
		const std::string& head = tokens[0];
		if (head[0] == '[') {
			section = head;
			continue;
		}
		try {
			if (head == "machines" && tokens.size() == 2)
				machines = std::stoi(tokens[1]);
			else if (head == "horizon" && tokens.size() == 2)
				horizon = std::stoi(tokens[1]);
			else if (head == "slot_minutes" && tokens.size() == 2)
				slot_minutes = std::stoi(tokens[1]);
			else if (head == "charge_rate" && tokens.size() == 2)
				charge_rate = parse_rat(tokens[1]);
			else if (head == "price") {
				for (std::size_t i = 1; i < tokens.size(); ++i)
					price.push_back(parse_rat(tokens[i]));
			} else if (head == "supply") {
				for (std::size_t i = 1; i < tokens.size(); ++i)
					green.push_back(parse_rat(tokens[i]));
			} else if (head == "job" && tokens.size() == 6) {
				jobs.emplace_back(std::stoi(tokens[1]), std::stoi(tokens[2]),
				                  std::stoi(tokens[3]), std::stoi(tokens[4]),
				                  parse_rat(tokens[5]));
			} else {
				fail(source, line_no, "unrecognized line '" + line + "'");
			}
		} catch (const std::runtime_error&) {
			throw;
		} catch (const std::exception& e) {
			fail(source, line_no, e.what());
		}
	}
	if (!machines || !horizon || !charge_rate)
		throw std::runtime_error(source + ": missing machines, horizon, or charge_rate");
	try {
		return Instance(std::move(jobs), *machines, *horizon, std::move(green),
		                std::move(price), *charge_rate, slot_minutes);
	} catch (const std::exception& e) {
		throw std::runtime_error(source + ": " + e.what());
	}
}

Instance read_instance(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open instance '" + path + "'");
	return read_instance(in, path);
}

} // namespace gdc
