export {
  GenSpec,
  LoraSpec,
  TrainSpec,
  GEN_DEFAULTS,
  LORA_DEFAULTS,
  TRAIN_DEFAULTS,
  makeGenSpec,
  makeTrainSpec,
  validateGenSpec,
  validateTrainSpec,
} from "./types.js";
export {
  DEFAULT_TRAINER,
  TrainerFailure,
  TrainResult,
  buildTrainArgs,
  fineTune,
} from "./trainer.js";
export {
  DEFAULT_GENERATOR,
  GeneratorFailure,
  GenerateResult,
  buildGenerateArgs,
  generate,
} from "./generator.js";
export {
  UnknownFamilyError,
  sentinelFor,
  supportedFamilies,
  truncateOutput,
} from "./truncate.js";
export {
  LengthMismatchError,
  emitPredictions,
  predictionRows,
} from "./predictions.js";
