/*
 * asmsvm - statistical shape model face alignment
 *
 * Copyright 2026 The asmsvm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "asmsvm/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv)
{
	using namespace asmsvm::cli;

	CLI::App app{"Statistical shape model face alignment with SVM-gated landmark search"};
	app.require_subcommand(1);

	TrainOptions train;
	std::string train_config;
	auto* train_cmd = app.add_subcommand("train", "Train a model bundle from annotated images");
	train_cmd->add_option("--images", train.images, "Directory of <stem>.pgm images")->required();
	train_cmd->add_option("--points", train.points, "Directory of <stem>.pts annotations")->required();
	train_cmd->add_option("--config", train_config, "JSON training configuration");
	train_cmd->add_option("--out", train.out, "Output bundle path")->required();

	FitOptions fit;
	auto* fit_cmd = app.add_subcommand("fit", "Fit landmarks to one image");
	fit_cmd->add_option("--model", fit.model, "Model bundle")->required();
	fit_cmd->add_option("--image", fit.image, "Input PGM image")->required();
	fit_cmd->add_option("--box", fit.box, "Face box x,y,w,h in pixels")->required();
	fit_cmd->add_option("--out", fit.out, "Output points file")->required();
	std::string overlay;
	fit_cmd->add_option("--overlay", overlay, "Optional PPM overlay output");
	fit_cmd->add_option("--mode", fit.mode, "classic or asm_svm")
	    ->check(CLI::IsMember({"classic", "asm_svm"}));

	EvalOptions eval;
	auto* eval_cmd = app.add_subcommand("eval", "Fit and score a labelled test set");
	eval_cmd->add_option("--model", eval.model, "Model bundle")->required();
	eval_cmd->add_option("--images", eval.images, "Directory of <stem>.pgm images")->required();
	eval_cmd->add_option("--points", eval.points, "Directory of <stem>.pts annotations")->required();
	eval_cmd->add_option("--mode", eval.modes, "classic or asm_svm (repeatable)")
	    ->required()
	    ->check(CLI::IsMember({"classic", "asm_svm"}));
	eval_cmd->add_option("--report", eval.report, "Report output path")->required();
	eval_cmd->add_option("--box-inflate", eval.box_inflate, "Ground-truth box inflation (0.1 = 10%)");
	eval_cmd->add_option("--metric", eval.metric, "euclidean or abs-coord")
	    ->check(CLI::IsMember({"euclidean", "abs-coord"}));

	SynthOptions synth;
	auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic annotated face set");
	synth_cmd->add_option("--out", synth.out, "Output directory (images/ and points/ are created)")->required();
	synth_cmd->add_option("--count", synth.count, "Number of faces");
	synth_cmd->add_option("--seed", synth.seed, "Random seed");
	synth_cmd->add_option("--noise", synth.noise, "Additive Gaussian noise sigma");
	synth_cmd->add_option("--size", synth.size, "Image side in pixels");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 2;
	}

	if (train_cmd->parsed()) {
		if (!train_config.empty()) {
			train.config = train_config;
		}
		return cmd_train(train, std::cout, std::cerr);
	}
	if (fit_cmd->parsed()) {
		if (!overlay.empty()) {
			fit.overlay = overlay;
		}
		return cmd_fit(fit, std::cout, std::cerr);
	}
	if (eval_cmd->parsed()) {
		return cmd_eval(eval, std::cout, std::cerr);
	}
	return cmd_synth(synth, std::cout, std::cerr);
}
