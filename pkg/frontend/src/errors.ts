export class MissingColumn extends Error {
  constructor(column: string, found: string[]) {
    super(`CSV is missing required column "${column}" (found: ${found.join(", ")})`);
    this.name = "MissingColumn";
  }
}

export class EmptySelection extends Error {
  constructor(requested: string[], available: string[]) {
    super(
      `no CSV rows match the requested radii [${requested.join(", ")}]; ` +
      `grid values present: [${available.join(", ")}]`,
    );
    this.name = "EmptySelection";
  }
}
